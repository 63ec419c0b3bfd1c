"""Slow, independent re-implementations used to pin expected values.

Nothing here imports the GF(2) or tensor code of the package: vectors are
plain lists of 0/1 and elimination is textbook row reduction.
"""

from __future__ import annotations

from itertools import combinations, product


def gf2_rank(rows: list[list[int]]) -> int:
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                m[i] = [x ^ y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def elements_in(s: int, n: int) -> list[int]:
    return [c for c in range(n) if (s >> c) & 1]


def one_minus(f, a: int) -> list[int]:
    return elements_in(f.add[f.one][f.neg[a]], f.size)


def square_classes(f) -> tuple[int, dict[int, list[int]]]:
    """Dimension of units/squares and a coordinate list per unit (own basis choice)."""
    units = list(range(1, f.size))
    sq = {f.mul[x][x] for x in units}
    inv = {a: next(b for b in units if f.mul[a][b] == f.one) for a in units}

    def same(x, y):
        return f.mul[x][inv[y]] in sq

    reps: list[int] = []
    for a in units:
        if not any(same(a, r) for r in reps):
            reps.append(a)
    k = len(reps)
    d = k.bit_length() - 1
    assert 1 << d == k, "square classes do not form an elementary abelian 2-group"
    # pick a basis greedily from the largest index down, to differ from the package
    basis: list[int] = []
    span = {0: f.one}
    for a in reversed(units):
        if any(same(a, v) for v in span.values()):
            continue
        basis.append(a)
        span.update({key | (1 << (len(basis) - 1)): f.mul[v][a] for key, v in list(span.items())})
    coords = {}
    for a in units:
        key = next(key for key, v in span.items() if same(a, v))
        coords[a] = [(key >> i) & 1 for i in range(d)]
    return d, coords


def tensor_list(vectors: list[list[int]], d: int) -> list[int]:
    out = []
    for idx in product(range(d), repeat=len(vectors)):
        bit = 1
        for v, i in zip(vectors, idx):
            bit &= v[i]
        out.append(bit)
    return out


def k_dims(f, max_degree: int) -> list[int]:
    """dim k_n by listing every tensor with a relation pair in two distinct slots."""
    d, coords = square_classes(f)
    units = list(range(1, f.size))
    pairs = [(a, b) for a in units for b in one_minus(f, a) if b != 0]
    dims = []
    for n in range(max_degree + 1):
        if n < 2:
            dims.append(d**n)
            continue
        rows = []
        basis_vecs = [[1 if j == i else 0 for j in range(d)] for i in range(d)]
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for a, b in pairs:
                    for filler in product(basis_vecs, repeat=n - 2):
                        vecs = list(filler)
                        slots: list = [None] * n
                        slots[i], slots[j] = coords[a], coords[b]
                        it = iter(vecs)
                        full = [s if s is not None else next(it) for s in slots]
                        rows.append(tensor_list(full, d))
        dims.append(d**n - gf2_rank(rows) if rows else d**n)
    return dims


def unit_group_presentation(f) -> tuple[list[int], dict[int, list[int]]]:
    """Cyclic orders and exponent vectors for a unit group of order <= 4."""
    units = list(range(1, f.size))
    n = len(units)
    if n > 4:
        raise ValueError("oracle only handles |units| <= 4")

    def power(a, k):
        out = f.one
        for _ in range(k):
            out = f.mul[out][a]
        return out

    def order(a):
        return next(k for k in range(1, n + 1) if power(a, k) == f.one)

    if n == 1:
        return [], {f.one: []}
    gen = next((a for a in units if order(a) == n), None)
    if gen is not None:
        return [n], {power(gen, k): [k] for k in range(n)}
    g1, g2 = [a for a in units if a != f.one][:2]
    return [2, 2], {f.mul[power(g1, i)][power(g2, j)]: [i, j] for i in range(2) for j in range(2)}


def unreduced_k_mod2_dims(f, max_degree: int) -> list[int]:
    """dim K_n/2K_n from a Smith normal form of the integer presentation of K_n."""
    from math import gcd

    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    orders, exps = unit_group_presentation(f)
    r = len(orders)
    units = list(range(1, f.size))
    pairs = [(a, b) for a in units for b in one_minus(f, a) if b != 0]
    gens = [[1 if j == i else 0 for j in range(r)] for i in range(r)]
    dims = []
    for n in range(max_degree + 1):
        cols = r**n
        if cols == 0:
            dims.append(0)
            continue
        idx = list(product(range(r), repeat=n))
        rows = []
        for k, t in enumerate(idx):
            m = 0
            for i in t:
                m = gcd(m, orders[i])
            row = [0] * cols
            row[k] = m
            rows.append(row)

        def tensor(vecs):
            out = []
            for t in idx:
                val = 1
                for v, i in zip(vecs, t):
                    val *= v[i]
                out.append(val)
            return out

        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for a, b in pairs:
                    for filler in product(gens, repeat=n - 2):
                        it = iter(filler)
                        vecs = [exps[a] if s == i else exps[b] if s == j else next(it) for s in range(n)]
                        rows.append(tensor(vecs))
        snf = smith_normal_form(Matrix(rows), domain=ZZ)
        diag = [snf[i, i] for i in range(min(snf.shape))]
        dims.append(sum(1 for d in diag if d % 2 == 0) + max(0, cols - len(rows)))
    return dims


def degree_two_sum_is_zero(f, a: list[int], b: list[int]) -> bool:
    """Whether sum rho(a_k) rho(b_k) vanishes in k_2, by rank comparison."""
    d, coords = square_classes(f)
    if d == 0:
        return True
    units = list(range(1, f.size))
    rows = []
    for x in units:
        for y in one_minus(f, x):
            if y == 0:
                continue
            rows.append(tensor_list([coords[x], coords[y]], d))
            rows.append(tensor_list([coords[y], coords[x]], d))
    target = [0] * (d * d)
    for x, y in zip(a, b):
        target = [s ^ t for s, t in zip(target, tensor_list([coords[x], coords[y]], d))]
    return gf2_rank(rows + [target]) == gf2_rank(rows)


def subgroups(order: int):
    out = set()
    elems = list(range(order))
    for k in range(0, 4):
        for gens in combinations(elems[1:], k):
            span = {0}
            for g in gens:
                span |= {x ^ g for x in span}
            out.add(frozenset(span))
    return sorted(out, key=sorted)


def group_quotient_hyperfield(g, sub: frozenset[int]):
    """M(G/H) built directly from cosets and represented sets."""
    from hyperk.hyperstructures import FiniteHyperfield
    from hyperk.specialgroups import represents

    reps = sorted({min(x ^ s for s in sub) for x in range(g.order)})
    idx = {r: i + 1 for i, r in enumerate(reps)}
    n = len(reps) + 1

    def cls(x: int) -> int:
        return idx[min(x ^ s for s in sub)]

    full = (1 << n) - 1
    add = [[0] * n for _ in range(n)]
    for i in range(n):
        add[0][i] = add[i][0] = 1 << i
    for a in reps:
        for b in reps:
            if a ^ b ^ g.minus_one in sub:
                add[cls(a)][cls(b)] = full
                continue
            out = 0
            for s in sub:
                for t in sub:
                    for c in represents(g, (a ^ s, b ^ t)):
                        out |= 1 << cls(c)
            add[cls(a)][cls(b)] = out
    mul = [[0] * n for _ in range(n)]
    for a in reps:
        for b in reps:
            mul[cls(a)][cls(b)] = cls(a ^ b)
    neg = [0] + [cls(a ^ g.minus_one) for a in reps]
    return FiniteHyperfield(
        "G/H", tuple(str(i) for i in range(n)), 1, tuple(neg), tuple(map(tuple, mul)), tuple(map(tuple, add))
    )
