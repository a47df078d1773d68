"""Independent reference for frozen test values.

Words are lists of (factor, exponent) with 1-based factor indices. Nothing
here shares code with the C++ library: reduction is a plain stack scan and
conjugacy is a breadth-first search over conjugators.
"""
from fractions import Fraction
import itertools
import json
import sys


def reduce(orders, word):
    out = []
    for f, e in word:
        n = orders[f - 1]
        if out and out[-1][0] == f:
            f0, e0 = out.pop()
            e = e0 + e
        if n:
            e %= n
        if e:
            out.append((f, e))
    return out


def fmt(word):
    return ".".join(f"c{f}^{e}" for f, e in word) or "1"


def inverse(orders, word):
    return reduce(orders, [(f, -e) for f, e in reversed(word)])


def mul(orders, a, b):
    return reduce(orders, a + b)


def power(orders, w, s):
    base = w if s >= 0 else inverse(orders, w)
    out = []
    for _ in range(abs(s)):
        out = mul(orders, out, base)
    return out


def alphabet(orders, max_exp):
    letters = []
    for i, n in enumerate(orders, 1):
        rng = range(1, n) if n else [e for e in range(-max_exp, max_exp + 1) if e]
        letters += [(i, e) for e in rng]
    return letters


def conjugate_bfs(orders, w1, w2, bound, max_exp=4):
    """Shortest u (by BFS layer) with u w1 u^-1 == w2, or None."""
    target = tuple(w2)
    letters = alphabet(orders, max_exp)
    layer = [[]]
    seen = {tuple()}
    for depth in range(bound + 1):
        nxt = []
        for u in layer:
            if tuple(mul(orders, mul(orders, u, w1), inverse(orders, u))) == target:
                return u
            if depth < bound:
                for x in letters:
                    v = reduce(orders, [x] + u)
                    if len(v) == depth + 1 and tuple(v) not in seen:
                        seen.add(tuple(v))
                        nxt.append(v)
        layer = nxt
    return None


def orbifold_euler(orientable, genus, boundary, alphas):
    chi = (2 - 2 * genus if orientable else 2 - genus) - boundary
    return Fraction(chi) - sum(1 - Fraction(1, a) for a in alphas)


def parse(text):
    if text == "1":
        return []
    out = []
    for tok in text.split("."):
        s, e = tok.split("^")
        out.append((int(s[1:]), int(e)))
    return out


def main():
    z35 = [3, 5]
    z2z3 = [2, 3]
    zz2 = [0, 2]
    res = {
        "reduce_z3z5": fmt(reduce(z35, parse("c1^2.c1^2.c2^3.c2^2.c1^1.c2^4"))),
        "mul_z3z5": fmt(mul(z35, parse("c1^1.c2^2"), parse("c2^3.c1^2.c2^1"))),
        "inverse_z3z5": fmt(inverse(z35, parse("c1^1.c2^2.c1^2.c2^4"))),
        "power_z2z3": fmt(power(z2z3, parse("c1^1.c2^1"), 6)),
        "power_neg_zz2": fmt(power(zz2, parse("c1^2.c2^1"), -2)),
        "conj_rotation": fmt(conjugate_bfs(z35, parse("c1^1.c2^2.c1^2.c2^1"), parse("c1^2.c2^1.c1^1.c2^2"), 4)),
        "conj_none_2s1b": conjugate_bfs([3, 3, 3], parse("c1^1.c2^2.c3^1"), parse("c1^1.c2^1.c3^1.c2^1"), 4),
        "euler": {
            "disk_two_holes_one_2": str(orbifold_euler(True, 0, 2, [2])),
            "disk_three_holes": str(orbifold_euler(True, 0, 3, [])),
            "disk_2_3_5": str(orbifold_euler(True, 0, 0, [2, 3, 5])),
            "torus_one_hole_3": str(orbifold_euler(True, 1, 1, [3])),
            "mobius_band": str(orbifold_euler(False, 1, 1, [])),
            "disk_one_hole_2_2": str(orbifold_euler(True, 0, 1, [2, 2])),
            "rp2_2_3": str(orbifold_euler(False, 1, 0, [2, 3])),
            "sphere_2_2_3_3": str(orbifold_euler(True, 0, 0, [2, 2, 3, 3])),
        },
    }
    if len(sys.argv) > 1 and sys.argv[1] == "--sweep":
        # Conjugacy classes of all reduced words up to length 4 in Z2*Z3:
        # count of unordered conjugate pairs, for a cross-check.
        words = [[]]
        letters = alphabet(z2z3, 1)
        for n in range(1, 5):
            for t in itertools.product(letters, repeat=n):
                w = list(t)
                if reduce(z2z3, w) == w:
                    words.append(w)
        pairs = 0
        for a, b in itertools.combinations(words, 2):
            if conjugate_bfs(z2z3, a, b, 4) is not None:
                pairs += 1
        res["z2z3_len4_words"] = len(words)
        res["z2z3_len4_conjugate_pairs"] = pairs
    json.dump(res, sys.stdout, indent=2)
    print()


if __name__ == "__main__":
    main()
