# Reference values for the default bump transform g(xi) = 2 int_0^1 cos(x xi) exp(-1/(1-x^2)) dx.
import mpmath as mp

mp.mp.dps = 40


def gcheck(x):
    return mp.e ** (-1 / (1 - x * x)) if abs(x) < 1 else mp.mpf(0)


def g(xi):
    return 2 * mp.quad(lambda x: mp.cos(x * xi) * gcheck(x), mp.linspace(0, 1, 41))


if __name__ == "__main__":
    for xi in ["0", "1", "5.5", "37.2"]:
        print(xi, mp.nstr(g(mp.mpf(xi)), 20))
