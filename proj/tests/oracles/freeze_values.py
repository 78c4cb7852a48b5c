"""Independent exact-arithmetic oracle used to freeze expected values in the C++ tests.

Run: python3 tests/oracles/freeze_values.py
"""
from fractions import Fraction as F
from itertools import combinations
import math


def ratios(kind, a, m, K):
    out = []
    for k in range(1, K + 1):
        if kind == "const":
            out.append(a)
        elif kind == "geom":
            out.append(a ** k)
        elif kind == "sparse":
            n = k.bit_length() - 1
            out.append(a ** n if k == 2 ** n and n >= 1 else a)
    return out


def intervals(kind, a, m, k):
    rs = ratios(kind, a, m, k)
    ivs = [(F(0), F(1))]
    A = F(1)
    for j in range(k):
        An = A * rs[j]
        e = (A - m * An) / (m - 1)
        ivs = [(l + i * (An + e), An) for (l, _) in ivs for i in range(m)]
        A = An
    return ivs


def endpoints(kind, a, m, k):
    return sorted({p for (l, L) in intervals(kind, a, m, k) for p in (l, l + L)})


def pair_product(pts):
    p = F(1)
    for x, y in combinations(pts, 2):
        p *= abs(x - y)
    return p


def log_frac(q):
    return math.log(q.numerator) - math.log(q.denominator)


print("E1 geom 1/4:", endpoints("geom", F(1, 4), 2, 1))
P = pair_product([F(0), F(1, 4), F(3, 4), F(1)])
print("P(E1 geom)=", P, "logP^2=", 2 * log_frac(P), "logD=", log_frac(P) / 6, "D=", math.exp(log_frac(P) / 6))
print("eq6 rhs k=1:", 4 * (2 * math.log(0.5) + log_frac(F(7, 32))))
E2 = endpoints("const", F(1, 3), 2, 2)
P2 = pair_product(E2)
print("E2 const1/3:", E2, "P=", P2, "logP=", log_frac(P2), "logD=", 2 * log_frac(P2) / (8 * 7))
print("D3 {0,1/3,2/3,1}:", max(pair_product(c) for c in combinations([F(0), F(1, 3), F(2, 3), F(1)], 3)) ** (1 / 3))
print("(1/4)^(1/3)=", 0.25 ** (1 / 3))
print("2log5/log6=", 2 * math.log(5) / math.log(6), "log9/log10=", math.log(9) / math.log(10))
print("rand dim=", math.log(2) / (math.log(3) + 1))
print("s_4096 sparse=", 4096 * math.log(2) / (4162 * math.log(3)))
print("s_2048 sparse=", 2048 * math.log(2) / (2103 * math.log(3)))
print("s_3072 sparse=", 3072 * math.log(2) / (3127 * math.log(3)))
print("log2/log3=", math.log(2) / math.log(3))
print("series l<=1:", 0.5 * math.log(0.5) + 0.25 * math.log(1 / 8))
print("-5log2=", -5 * math.log(2))
print("3/sqrt2 mod=", math.log(3 / math.sqrt(2)))


# Brute-force separating ratio over the canonical candidate family, exact.
def max_sep(kind, a, m, k):
    ivs = [(l, l + L) for (l, L) in intervals(kind, a, m, k)]
    ends = sorted({p for iv in ivs for p in iv})
    centers = [(l + r) / 2 for (l, r) in ivs] + [(ivs[i][1] + ivs[i + 1][0]) / 2 for i in range(len(ivs) - 1)]
    best = None
    for c in centers:
        ds = sorted({abs(p - c) for p in ends})
        for r, R in zip(ds, ds[1:]):
            if r == 0:
                continue
            ok = True
            for (l, rr) in ivs:
                if l <= c <= rr:
                    dmin = F(0)
                else:
                    dmin = min(abs(l - c), abs(rr - c))
                dmax = max(abs(l - c), abs(rr - c))
                if dmin < R and dmax > r:
                    ok = False
                    break
            if ok:
                q = R / r
                best = q if best is None or q > best else best
    return best


for kind, a, k in [("const", F(1, 3), 3), ("const", F(1, 4), 3), ("sparse", F(1, 3), 4), ("const", F(1, 3), 4)]:
    print("maxsep", kind, a, k, max_sep(kind, a, 2, k))
