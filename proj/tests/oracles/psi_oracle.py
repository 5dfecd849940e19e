"""Reference values of Psi(r) = r exp(int_0^r (exp(-C eta) - 1)/eta deta).

Run with mpmath at 50 digits; the printed table is frozen into
tests/test_carleman.cpp.
"""
import mpmath as mp

mp.mp.dps = 50


def psi(c, r):
    c = mp.mpf(c)
    r = mp.mpf(r)
    integral = mp.quad(lambda e: mp.expm1(-c * e) / e, [0, r])
    # cross-check with the closed form -Ein(c r)
    ein = mp.e1(c * r) + mp.log(c * r) + mp.euler
    assert abs(integral + ein) < mp.mpf(10) ** -40
    return r * mp.exp(integral)


for c in ("1", "4"):
    for r in ("1e-6", "1e-3", "0.01", "0.1", "0.5", "1", "2", "10"):
        print(f"{{{c}.0, {r}, {mp.nstr(psi(c, r), 17)}}},")
