"""Reference values for the quadrature unit tests (mpmath, 40 digits)."""
from mpmath import mp, quad, exp, mpf, linspace

mp.dps = 40


def fresnel_0_10():
    return quad(lambda x: exp(1j * x * x), linspace(0, 10, 200))


def chirped_gaussian():
    return quad(lambda x: exp(-x * x) * exp(1j * (10 * x + 3 * x * x)), linspace(-8, 8, 400))


if __name__ == "__main__":
    for name, v in [("fresnel_0_10", fresnel_0_10()), ("chirped_gaussian", chirped_gaussian())]:
        print(name, mp.nstr(v.real, 20), mp.nstr(v.imag, 20))
