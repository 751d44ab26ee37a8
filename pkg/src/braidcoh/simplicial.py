"""The simplicial object S(A), the bar complex, and deconcatenation.

S_n(A) = A^{(x)n}; elements are tensor dicts keyed by word tuples.  The bar
complex B_n(A) = A (x) A^{(x)n} (x) A is handled with the same dicts of
arity n+2, the first and last slots being the outer bimodule factors.

Layouts used by the cocommutativity pipeline:
  * S_n(Delta) maps arity n to arity 2n with the pairs interleaved
    (a1, b1, a2, b2, ...);
  * the simplicial isomorphism g_n re-sorts to block layout
    (a1..an, b1..bn), twisting by t as the b's move past the a's;
  * AW_{p,q} and its twist land in S_p (x) S_q, arity p+q.

The checks here are the two strict identities in the proof that the
deconcatenation coproduct is cocommutative up to homotopy; both are exact
equalities, so no homotopy ever needs to be constructed.
"""

from dataclasses import dataclass, field

from .braided import act_tensor, braid_blocks, ensure_bimonoid, _coproduct_word
from .lincomb import add_inplace, add_term
from .scalars import QQ


def _eps_word(w):
    return QQ(1) if not w else QQ(0)


def face(pres, i, e):
    """Face map on an arity n+1 element: counit at the ends, product inside."""
    out = {}
    for key, c in e.items():
        m = len(key)
        if not 0 <= i <= m:
            raise IndexError(f"face index {i} out of range for arity {m}")
        if i == 0:
            if key[0] == ():
                add_term(out, key[1:], c)
        elif i == m:
            if key[-1] == ():
                add_term(out, key[:-1], c)
        else:
            for w, cw in pres.mul_words(key[i - 1], key[i]).items():
                add_term(out, key[:i - 1] + (w,) + key[i + 1:], c * cw)
    return out


def degeneracy(j, e):
    """Insert the unit monomial at slot j."""
    out = {}
    for key, c in e.items():
        if not 0 <= j <= len(key):
            raise IndexError(f"degeneracy index {j} out of range")
        add_term(out, key[:j] + ((),) + key[j:], c)
    return out


def simplicial_differential(pres, e):
    """Alternating sum of all faces on an arity n+1 element."""
    out = {}
    arity = len(next(iter(e), ()))
    sign = QQ(1)
    for i in range(arity + 1):
        add_inplace(out, face(pres, i, e), sign)
        sign = -sign
    return out


def bar_differential(pres, e):
    """b' on an element of B_{n}(A) presented as an arity n+2 tensor."""
    out = {}
    for key, c in e.items():
        sign = QQ(1)
        for i in range(len(key) - 1):
            for w, cw in pres.mul_words(key[i], key[i + 1]).items():
                add_term(out, key[:i] + (w,) + key[i + 2:], sign * c * cw)
            sign = -sign
    return out


def bar_contracting_homotopy(e):
    """s(a_0 (x) ... ) = 1 (x) a_0 (x) ...; b's + sb' = id on the bar complex."""
    return {((),) + key: c for key, c in e.items()}


def dec(p, q, e):
    """Deconcatenation component S_{p+q} -> S_p (x) S_q is the identity."""
    arity = len(next(iter(e), ()))
    if e and arity != p + q:
        raise ValueError(f"arity {arity} element cannot split as ({p},{q})")
    return dict(e)


def s_delta(pres, e):
    """S_n(Delta): coproduct applied to every factor, pairs interleaved."""
    ensure_bimonoid(pres)
    out = {}
    for key, c in e.items():
        frontier = {(): c}
        for w in key:
            nxt = {}
            for prefix, cp in frontier.items():
                for pair, cw in _coproduct_word(pres, w).items():
                    add_term(nxt, prefix + pair, cp * cw)
            frontier = nxt
        add_inplace(out, frontier)
    return out


def g_map(pres, e):
    """g_n: S_n(A (x) A) -> S_n(A) x S_n(A), interleaved to block layout.

    Unfolds the recursion g_{n+1} = c_{B^n,A} o (g_n (x) id): each incoming
    a-factor is braided across the b-block accumulated so far, picking up
    t to the power of that block's internal degree.
    """
    out = {}
    for key, c in e.items():
        n = len(key) // 2
        if len(key) != 2 * n:
            raise ValueError("g_map expects even arity (interleaved pairs)")
        frontier = {(): c}          # partial a-blocks
        bblock = []
        bdeg = 0
        for i in range(n):
            a, b = key[2 * i], key[2 * i + 1]
            nxt = {}
            for prefix, cp in frontier.items():
                for w, cw in pres.act_word(bdeg, a).items():
                    add_term(nxt, prefix + (w,), cp * cw)
            frontier = nxt
            bblock.append(b)
            bdeg += pres.degree_of(b)
        tail = tuple(bblock)
        for prefix, cp in frontier.items():
            add_term(out, prefix + tail, cp)
    return out


def aw(p, q, e):
    """Alexander-Whitney: keep the first p of the left strand and the last
    q of the right strand, counit on everything else."""
    out = {}
    for key, c in e.items():
        n = len(key) // 2
        if len(key) != 2 * n or n != p + q:
            raise ValueError("AW expects block arity 2(p+q)")
        u, w = key[:n], key[n:]
        if all(x == () for x in u[p:]) and all(x == () for x in w[:p]):
            add_term(out, u[:p] + w[p:], c)
    return out


def aw_twisted(p, q, e):
    """Twisted Alexander-Whitney, including its (-1)^{pq} prefactor."""
    sign = QQ(-1) if (p * q) % 2 else QQ(1)
    out = {}
    for key, c in e.items():
        n = len(key) // 2
        if len(key) != 2 * n or n != p + q:
            raise ValueError("AW expects block arity 2(p+q)")
        u, w = key[:n], key[n:]
        if all(x == () for x in u[:q]) and all(x == () for x in w[q:]):
            add_term(out, u[q:] + w[:q], sign * c)
    return out


def tensor_basis(pres, arity, max_degree):
    """All basis tensors of the given arity and total degree <= max_degree."""
    if arity == 0:
        yield ()
        return
    for d in range(max_degree + 1):
        yield from _tensor_basis_exact(pres, arity, d)


def _tensor_basis_exact(pres, arity, degree):
    if arity == 1:
        for w in pres.graded_basis(degree):
            yield (w,)
        return
    for d0 in range(degree + 1):
        for w in pres.graded_basis(d0):
            for rest in _tensor_basis_exact(pres, arity - 1, degree - d0):
                yield (w,) + rest


@dataclass
class DecReport:
    max_arity: int
    max_degree: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def _check_tensor(pres, key, splits, report):
    pipeline = g_map(pres, s_delta(pres, {key: QQ(1)}))
    n = len(key)
    for (p, q) in splits:
        got = aw(p, q, pipeline)
        if got != {key: QQ(1)}:
            report.failures.append(("aw-identity", p, q, key, got))
        want = braid_blocks(pres, q, p, {key: QQ(1)})
        if (p * q) % 2:
            want = {k: -c for k, c in want.items()}
        got2 = aw_twisted(p, q, pipeline)
        if got2 != want:
            report.failures.append(("aw-braiding", p, q, key, got2, want))
        report.checked += 1


def verify_dec_cocommutativity(pres, p, q, max_degree):
    """Check AW o g o S(Delta) = id and its twisted braided companion.

    Exhaustive over all basis tensors of arity p+q and internal degree up
    to max_degree; any mismatch is reported with the witness tensor.
    """
    pres.ensure_confluent()
    report = DecReport(p + q, max_degree)
    for key in tensor_basis(pres, p + q, max_degree):
        _check_tensor(pres, key, [(p, q)], report)
    return report


def verify_dec_window(pres, max_arity, max_degree):
    """All (p, q) with p+q <= max_arity at once, sharing the g o S(Delta)
    pipeline per tensor."""
    pres.ensure_confluent()
    report = DecReport(max_arity, max_degree)
    for n in range(max_arity + 1):
        splits = [(p, n - p) for p in range(n + 1)]
        for key in tensor_basis(pres, n, max_degree):
            _check_tensor(pres, key, splits, report)
    return report


class BarResolutionComplex:
    """B(A) as a free bimodule complex; keys are (left, middle tuple, right).

    Only used where the bar complex must quack like a resolution (the
    deconcatenation-vs-coduoid consistency check); the comparison morphisms
    work on raw tensors instead.
    """

    def __init__(self, pres, max_arity):
        self.pres = pres
        self.max_arity = max_arity
        self._basis_cache = {}

    @property
    def max_hom_degree(self):
        return self.max_arity

    def generators(self, n):
        raise NotImplementedError("bar generators are enumerated per degree")

    def degree_of_key(self, n, key):
        a, mid, b = key
        p = self.pres
        return p.degree_of(a) + sum(p.degree_of(w) for w in mid) + p.degree_of(b)

    def leftness(self, n, key):
        return len(key[0])

    def basis(self, n, d):
        got = self._basis_cache.get((n, d))
        if got is not None:
            return got
        out = []
        for split in self._splits(n + 2, d):
            out.append((split[0], split[1:-1], split[-1]))
        self._basis_cache[(n, d)] = out
        return out

    def _splits(self, arity, degree):
        return list(_tensor_basis_exact(self.pres, arity, degree)) \
            if arity else ([()] if degree == 0 else [])

    def diff(self, n, key):
        if n == 0:
            return {}
        a, mid, b = key
        flat = (a,) + mid + (b,)
        out = {}
        for key2, c in bar_differential(self.pres, {flat: QQ(1)}).items():
            add_term(out, (key2[0], key2[1:-1], key2[-1]), c)
        return out

    def act_left(self, n, key, g):
        a, mid, b = key
        return {(w, mid, b): c for w, c in self.pres.mul_words((g,), a).items()}

    def act_right(self, n, key, g):
        a, mid, b = key
        return {(a, mid, w): c for w, c in self.pres.mul_words(b, (g,)).items()}

    def t_act(self, n, key):
        a, mid, b = key
        flat = (a,) + mid + (b,)
        out = {}
        for key2, c in act_tensor(self.pres, 1, {flat: QQ(1)}).items():
            add_term(out, (key2[0], key2[1:-1], key2[-1]), c)
        return out

    def aug(self, key):
        a, mid, b = key
        assert mid == ()
        return self.pres.mul_words(a, b)
