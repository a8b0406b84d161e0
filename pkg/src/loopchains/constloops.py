"""Constant-loop chain maps C(X) -> L(X).

``rho`` is the closed combinatorial formula indexed by bracket sequences;
``chi`` is built from the coproduct, the antipode and the cocommutativity
homotopy, either directly or as the composite psi∘T∘iota.
"""
from __future__ import annotations

from collections import defaultdict
from functools import lru_cache

from .exactalg import FormalSum, ZZ
from .pathcat import Word, concat, identity
from .necklace import Necklace, AdElement, necklace_key, ad_key
from .hopf import nabla0_bead, nabla1_bead, antipode
from .simplicial import Complex, Simplex, aw_coproduct


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


# ---------------------------------------------------------------------------
# rho


def enumerate_S(k: int) -> list[tuple[tuple, int]]:
    """All bracket sequences ((p1,q1),...,(pl,ql)) for a k-simplex, with signs.

    Sequences are ordered lexicographically on the flattened tuple.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    out = []

    def rec(seq):
        p_last, q_last = seq[-1]
        if q_last == k:
            out.append(tuple(seq))
        q1 = seq[0][1]
        for p in range(p_last, q1 + 1):
            # overlap with the previous bracket
            if len(seq) >= 1 and not p < q_last:
                continue
            for q in range(max(q_last, q1), k + 1):
                if p + q <= p_last + q_last:
                    continue
                seq.append((p, q))
                rec(seq)
                seq.pop()

    for q1 in range(1, k + 1):
        rec([(0, q1)])
    out = [s for s in out if is_valid_sequence(s, k)]
    out.sort(key=lambda s: [x for pq in s for x in pq])
    return [(s, _sgn(sequence_sign(s))) for s in out]


def is_valid_sequence(s, k: int) -> bool:
    l = len(s)
    p = [x for x, _ in s]
    q = [y for _, y in s]
    if p[0] != 0 or q[-1] != k:
        return False
    sums = [a + b for a, b in s]
    if any(x >= y for x, y in zip(sums, sums[1:])):
        return False
    chain = p + q
    if any(x > y for x, y in zip(chain, chain[1:])):
        return False
    if any(not p[j + 1] < q[j] for j in range(l - 1)):
        return False
    return True


def sequence_sign(s) -> int:
    """The exponent ℓ+1+p_ℓ+q₁(q_ℓ+1)+Σ_{j≥2} p_j(q_j−q_{j−1})."""
    l = len(s)
    p = [x for x, _ in s]
    q = [y for _, y in s]
    e = l + 1 + p[-1] + q[0] * (q[-1] + 1)
    e += sum(p[j] * (q[j] - q[j - 1]) for j in range(1, l))
    return e


def sequence_necklace(sigma: Simplex, s) -> Necklace:
    """The necklace σ⟦s⟧ for one bracket sequence."""
    v = sigma
    beads = []
    l = len(s)
    for j in range(l):
        pj, qj = s[j]
        beads.append((v[qj], v[pj]))
        if j + 1 < l:
            pn, qn = s[j + 1]
            beads.append(v[pj:pn + 1] + v[qj:qn + 1])
    marked = v[s[-1][0]:s[0][1] + 1]
    return Necklace(Word(v[s[0][1]], tuple(beads)), marked)


@lru_cache(maxsize=None)
def _rho_pattern(k: int) -> tuple:
    sigma = tuple(range(k + 1))
    return tuple((sequence_necklace(sigma, s), c) for s, c in enumerate_S(k))


def relabel_necklace(n: Necklace, v) -> Necklace:
    w, m = n
    return Necklace(Word(v[w.source], tuple(tuple(v[x] for x in b) for b in w.beads)),
                    tuple(v[x] for x in m))


def rho_raw(sigma: Simplex) -> dict:
    sigma = tuple(sigma)
    if len(sigma) == 1:
        return {Necklace(identity(sigma[0]), sigma): 1}
    out: dict = {}
    for n, c in _rho_pattern(len(sigma) - 1):
        out[relabel_necklace(n, sigma)] = c
    return out


def _check(X, sigma):
    if X is not None and tuple(sigma) not in X:
        raise ValueError(f"{sigma} is not a simplex of the complex")


def rho_simplex(sigma, X: Complex | None = None, ring=ZZ) -> FormalSum:
    _check(X, sigma)
    return FormalSum(rho_raw(tuple(sigma)), ring, key=necklace_key)


def _linear(f, c: FormalSum, key) -> FormalSum:
    acc: dict = defaultdict(int)
    for b, x in c.raw().items():
        for m, y in f(b).items():
            acc[m] += x * y
    return FormalSum.from_accumulator(acc, c.ring, key)


def rho(c: FormalSum) -> FormalSum:
    """Linear extension of rho to a chain."""
    return _linear(rho_raw, c, necklace_key)


# ---------------------------------------------------------------------------
# chi as a composite


def iota_raw(sigma: Simplex) -> dict:
    return {AdElement(tuple(sigma), identity(sigma[-1]), False): 1}


def iota(sigma) -> FormalSum:
    return FormalSum(iota_raw(tuple(sigma)), ZZ, key=ad_key)


def T_raw(e: AdElement) -> dict:
    """T = id + T0 from the ad complex to the ad-op complex."""
    sigma, alpha, _ = e
    out: dict = defaultdict(int)
    out[AdElement(sigma, alpha, True)] += 1
    da = alpha.degree
    for (front, back), _c in aw_coproduct(sigma).items():
        if len(back) < 3:
            continue
        for (l, r), c in nabla1_bead(back).items():
            s = _sgn(r.degree * da)
            lw = concat(l, alpha)
            for sw, x in antipode(r).items():
                out[AdElement(front, concat(lw, sw), True)] += s * c * x
    return {m: x for m, x in out.items() if x}


def T_map(e) -> FormalSum:
    if isinstance(e, FormalSum):
        return _linear(T_raw, e, ad_key)
    return FormalSum(T_raw(e), ZZ, key=ad_key)


def psi_raw(e: AdElement) -> dict:
    sigma, alpha, _ = e
    if len(sigma) == 1:
        return {Necklace(alpha, sigma): 1}
    out: dict = defaultdict(int)
    da = alpha.degree
    k = len(sigma) - 1
    for (l, r), c in nabla0_bead(sigma).items():
        s = _sgn(da * k + l.degree)
        marked = r.beads[0]
        for sw, x in antipode(l).items():
            out[Necklace(concat(alpha, sw), marked)] += s * c * x
    return {m: x for m, x in out.items() if x}


def psi(e) -> FormalSum:
    if isinstance(e, FormalSum):
        return _linear(psi_raw, e, necklace_key)
    return FormalSum(psi_raw(e), ZZ, key=necklace_key)


def chi_composed_raw(sigma: Simplex) -> dict:
    out: dict = defaultdict(int)
    for e, c in iota_raw(sigma).items():
        for t, x in T_raw(e).items():
            for n, y in psi_raw(t).items():
                out[n] += c * x * y
    return {m: x for m, x in out.items() if x}


def chi_direct_raw(sigma: Simplex) -> dict:
    """chi from the closed three-term formula."""
    sigma = tuple(sigma)
    if len(sigma) == 1:
        return {Necklace(identity(sigma[0]), sigma): 1}
    out: dict = defaultdict(int)
    # (S(σ^{0,1})) σ^{0,2}
    for (l, r), c in nabla0_bead(sigma).items():
        s = _sgn(l.degree)
        for sw, x in antipode(l).items():
            out[Necklace(sw, r.beads[0])] += s * c * x
    # (σ^{1,1} | S(σ^{1,2})) s(σ)
    for (l, r), c in nabla1_bead(sigma).items():
        for sw, x in antipode(r).items():
            out[Necklace(concat(l, sw), sigma[:1])] += c * x
    # (σ''^{1,1} | S(σ''^{1,2}) | S(σ'^{0,1})) σ'^{0,2} over cuts with |σ'|, |σ''| >= 1
    for j in range(1, len(sigma) - 1):
        front, back = sigma[:j + 1], sigma[j:]
        dp, dpp = len(front) - 1, len(back) - 1
        for (l1, r1), c1 in nabla1_bead(back).items():
            for s1, x1 in antipode(r1).items():
                beta = concat(l1, s1)
                for (l0, r0), c0 in nabla0_bead(front).items():
                    s = _sgn(dp * dpp + l0.degree)
                    for s0, x0 in antipode(l0).items():
                        out[Necklace(concat(beta, s0), r0.beads[0])] += s * c1 * x1 * c0 * x0
    return {m: x for m, x in out.items() if x}


def chi_simplex(sigma, X: Complex | None = None, ring=ZZ, method: str = "direct") -> FormalSum:
    """chi on one simplex; ``method`` is "direct" or "composed"."""
    _check(X, sigma)
    f = chi_direct_raw if method == "direct" else chi_composed_raw
    return FormalSum(f(tuple(sigma)), ring, key=necklace_key)


def chi(c: FormalSum, method: str = "direct") -> FormalSum:
    return _linear(chi_direct_raw if method == "direct" else chi_composed_raw, c, necklace_key)


# ---------------------------------------------------------------------------
# homotopy between rho and chi


class HomotopyNotFound(RuntimeError):
    pass


_H_PATTERNS: dict = {}


def _relabel_raw(a: dict, v) -> dict:
    return {relabel_necklace(n, v): c for n, c in a.items()}


def _h_raw(sigma: Simplex, max_weight: int | None = None, inverse_slack: int = 0) -> dict:
    k = len(sigma) - 1
    if k not in _H_PATTERNS:
        _H_PATTERNS[k] = _solve_h(k, max_weight, inverse_slack)
    return _relabel_raw(_H_PATTERNS[k], sigma)


def _inverse_envelope(a: dict) -> dict:
    """For each inverse edge, the largest number of times it occurs in one necklace of a."""
    env: dict = defaultdict(int)
    for n in a:
        counts: dict = defaultdict(int)
        for b in n.word.beads:
            if len(b) == 2 and b[0] > b[1]:
                counts[b] += 1
        for e, c in counts.items():
            env[e] = max(env[e], c)
    return env


def _solve_h(k: int, max_weight: int | None, inverse_slack: int) -> dict:
    from .exactalg import NotSolvable, SparseIntMatrix, solve_integer
    from .necklace import D_raw, weight_basis
    from .simplicial import boundary, standard_simplex

    sigma = tuple(range(k + 1))
    target: dict = defaultdict(int)
    for n, c in chi_direct_raw(sigma).items():
        target[n] += c
    for n, c in rho_raw(sigma).items():
        target[n] -= c
    for f, c in boundary(sigma).items():
        for n, x in _h_raw(f).items():
            target[n] -= c * x
    target = {n: c for n, c in target.items() if c}
    if not target:
        return {}
    X = standard_simplex(k)
    w0 = max(n.weight for n in target)
    # Escalate the weight bound from the weight of the target. Each inverse
    # edge may occur at most as often as in the target, plus a slack that is
    # raised by one if no weight up to the bound works: extra inverse edges
    # mostly feed extra weight, and the cap keeps the truncated basis small
    # enough to reach the weights that are needed.
    env = _inverse_envelope(target)
    top = max_weight if max_weight is not None else w0 + 3
    last_error = f"weight bound {top} is below the target weight {w0}"
    for slack in (inverse_slack, inverse_slack + 1):
        caps = {(j, i): env.get((j, i), 0) + slack for i in range(k + 1) for j in range(i + 1, k + 1)}
        for w in range(w0, top + 1):
            basis = weight_basis(X, k + 1, w, caps)
            rows: dict = {}
            entries = {}
            for j, b in enumerate(basis):
                for n, c in D_raw(b).items():
                    entries[(rows.setdefault(n, len(rows)), j)] = c
            missing = [n for n in target if n not in rows]
            if missing:
                last_error = f"weight {w}, slack {slack}: target leaves the image ({missing[0]})"
                continue
            rhs = {rows[n]: c for n, c in target.items()}
            try:
                x = solve_integer(SparseIntMatrix(len(rows), len(basis), entries), rhs)
            except NotSolvable as e:
                last_error = f"weight {w}, slack {slack}: {e}"
                continue
            return {basis[j]: c for j, c in x.items() if c}
    raise HomotopyNotFound(f"no integer homotopy on the {k}-simplex ({last_error})")


def synthesize_homotopy(sigma, max_weight: int | None = None, ring=ZZ, inverse_slack: int = 0) -> FormalSum:
    """A natural h with D h + h ∂ = chi - rho, solved on standard simplices.

    The solution on the standard k-simplex is found by an integer linear solve
    over the weight-truncated necklace basis in degree k+1 and transported to
    other simplices by relabelling vertices. The weight bound escalates from
    the weight of chi - rho - h(∂σ) up to ``max_weight`` (default: that weight
    plus 3); each inverse edge may occur in a basis element at most as often
    as in the target plus ``inverse_slack``, and the whole escalation is
    repeated once with the slack raised by one.
    """
    return FormalSum(_h_raw(tuple(sigma), max_weight, inverse_slack), ring, key=necklace_key)


def homotopy_defect(sigma) -> dict:
    """D h(σ) + h(∂σ) - chi(σ) + rho(σ); zero when the identity holds."""
    from .necklace import D_sum
    from .simplicial import boundary
    sigma = tuple(sigma)
    out: dict = defaultdict(int)
    for n, c in D_sum(_h_raw(sigma)).items():
        out[n] += c
    for f, c in boundary(sigma).items():
        for n, x in _h_raw(f).items():
            out[n] += c * x
    for n, c in chi_direct_raw(sigma).items():
        out[n] -= c
    for n, c in rho_raw(sigma).items():
        out[n] += c
    return {n: c for n, c in out.items() if c}
