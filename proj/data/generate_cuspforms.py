"""Hejhal's method for Maass cusp forms on SL2(Z).

f(x+iy) = sum_{n>=1} a_n sqrt(y) K_{iR}(2 pi n y) cs(2 pi n x), cs = cos (even) or sin (odd),
with a_1 = 1 (Hecke normalisation). Outputs R and a_1..a_M, plus the change in
each a_n when the solve is repeated at 0.93 Y.

Usage: python3 generate_cuspforms.py R_guess even|odd [M] [Y]
"""
import sys
from mpmath import mp, mpf, besselk, sqrt, cos, sin, pi, exp, matrix, lu_solve, findroot

mp.dps = 25


def pullback(x, y):
    while True:
        x = x - round(x)
        r2 = x * x + y * y
        if r2 < 1 - mpf(10) ** -20:
            x, y = -x / r2, y / r2
            continue
        return x, y


def kscaled(R, t):
    return (besselk(1j * R, t) * exp(pi * R / 2)).real


def system(R, M, Y, Q, parity):
    cs = cos if parity == "even" else sin
    xs = [(m - mpf(1) / 2) / (2 * Q) for m in range(1, Q + 1)]
    pts = [pullback(x, Y) for x in xs]
    # Kpt[m][n] = sqrt(y*) K(2 pi n y*) cs(2 pi n x*)
    Kpt = [[sqrt(ys) * kscaled(R, 2 * pi * n * ys) * cs(2 * pi * n * xs_) for n in range(1, M + 1)] for xs_, ys in pts]
    V = matrix(M, M)
    for l in range(1, M + 1):
        wl = [cs(2 * pi * l * x) for x in xs]
        for n in range(1, M + 1):
            acc = mpf(0)
            for m in range(Q):
                acc += Kpt[m][n - 1] * wl[m]
            V[l - 1, n - 1] = -2 * acc / Q
        V[l - 1, l - 1] += sqrt(Y) * kscaled(R, 2 * pi * l * Y)
    return V


def solve(R, M, Y, Q, parity):
    V = system(R, M, Y, Q, parity)
    A = matrix(M - 1, M - 1)
    b = matrix(M - 1, 1)
    for i in range(1, M):
        b[i - 1] = -V[i, 0]
        for j in range(1, M):
            A[i - 1, j - 1] = V[i, j]
    c = lu_solve(A, b)
    coeffs = [mpf(1)] + [c[i] for i in range(M - 1)]
    resid = sum(V[0, j] * coeffs[j] for j in range(M))
    return coeffs, resid


def main():
    R0 = mpf(sys.argv[1])
    parity = sys.argv[2]
    M = int(sys.argv[3]) if len(sys.argv) > 3 else 50
    Y = mpf(sys.argv[4]) if len(sys.argv) > 4 else mpf("0.16")
    Q = M + 20
    R = findroot(lambda r: solve(r, M, Y, Q, parity)[1], (R0, R0 + mpf("1e-7")), solver="secant", tol=mpf(10) ** -24)
    c1, _ = solve(R, M, Y, Q, parity)
    c2, _ = solve(R, M, Y * mpf("0.93"), Q + 4, parity)
    print("R", mp.nstr(R, 20))
    for n in range(M):
        print(n + 1, mp.nstr(c1[n], 20), mp.nstr(abs(c1[n] - c2[n]), 3))


if __name__ == "__main__":
    main()
