"""Yetter-Drinfeld braiding and the primitively generated coproduct.

Over k[t,t^-1] the braiding on homogeneous elements is
``c(v (x) w) = t^{deg v}.w (x) v``.  Tensor elements are dicts keyed by
tuples of normal-form words; the arity is fixed per element and the empty
tuple of words is the scalar tensor.

The coproduct sends every generator g to g(x)1 + 1(x)g and extends as an
algebra map into the braided tensor square.  Whether that map descends to
the quotient is a property of the presentation (it does iff every relation
is killed), so it is verified on the rules before any coproduct is served.
"""

from dataclasses import dataclass, field

from .errors import NotBimonoidError
from .lincomb import add_inplace, add_term
from .scalars import QQ


def tensor_degree(pres, key):
    return sum(pres.degree_of(w) for w in key)


def tensor_apply_factor(e, i, f):
    """Replace factor i of every term through the word->element map f."""
    out = {}
    for key, c in e.items():
        for w, cw in f(key[i]).items():
            add_term(out, key[:i] + (w,) + key[i + 1:], c * cw)
    return out


def act_tensor(pres, k, e):
    """t^k applied to every factor (t is an algebra automorphism)."""
    out = dict(e)
    if k == 0:
        return out
    for i in range(len(next(iter(e), ()))):
        out = tensor_apply_factor(out, i, lambda w: pres.act_word(k, w))
    return out


def braid_blocks(pres, p, q, e):
    """c_{A^{(x)p}, A^{(x)q}} on an arity p+q tensor element."""
    out = {}
    for key, c in e.items():
        u, w = key[:p], key[p:]
        for wk, cw in act_tensor(pres, tensor_degree(pres, u), {w: c}).items():
            add_term(out, wk + u, cw)
    return out


def braid(pres, e):
    """The braiding on an arity-2 element: v(x)w -> t^{deg v}.w (x) v."""
    return braid_blocks(pres, 1, 1, e)


def braid_inverse(pres, e):
    """Inverse braiding: v(x)w -> w (x) t^{-deg w}.v."""
    out = {}
    for (v, w), c in e.items():
        for v2, cv in pres.act_word(-pres.degree_of(w), v).items():
            add_term(out, (w, v2), c * cv)
    return out


def braided_square_multiply(pres, u, v):
    """Product in A (x)_c A: (a(x)b)(c(x)d) = a(t^{deg b}.c) (x) bd."""
    out = {}
    for (a, b), cu in u.items():
        shift = pres.degree_of(b)
        for (c, d), cv in v.items():
            coeff = cu * cv
            for wc, cc in pres.act_word(shift, c).items():
                left = pres.mul_words(a, wc)
                right = pres.mul_words(b, d)
                for wl, cl in left.items():
                    for wr, cr in right.items():
                        add_term(out, (wl, wr), coeff * cc * cl * cr)
    return out


def _coproduct_word(pres, word):
    cache = pres._coproduct_cache
    got = cache.get(word)
    if got is not None:
        return got
    if not word:
        out = {((), ()): QQ(1)}
    else:
        g = word[0]
        head = {((g,), ()): QQ(1), ((), (g,)): QQ(1)}
        out = braided_square_multiply(pres, head, _coproduct_word(pres, word[1:]))
    cache[word] = out
    return out


def ensure_bimonoid(pres):
    """Check once that the coproduct kills every relation of the presentation."""
    if pres._bimonoid_ok is True:
        return
    if pres._bimonoid_ok is False:
        raise NotBimonoidError(f"{pres!r} does not carry the primitive coproduct")
    for lhs, rhs in pres.rules:
        lhs_cop = _coproduct_word(pres, lhs)
        rhs_cop = {}
        for w, c in rhs.items():
            add_inplace(rhs_cop, _coproduct_word(pres, w), c)
        add_inplace(rhs_cop, lhs_cop, QQ(-1))
        if rhs_cop:
            pres._bimonoid_ok = False
            raise NotBimonoidError(
                f"coproduct does not vanish on relation {pres.format_word(lhs)}")
    pres._bimonoid_ok = True


def coproduct(pres, e):
    """Delta(e) as an arity-2 tensor element."""
    ensure_bimonoid(pres)
    out = {}
    for w, c in e.items():
        add_inplace(out, _coproduct_word(pres, w), c)
    return out


def counit(pres, e):
    return pres.augment(e)


@dataclass
class BimonoidReport:
    degree: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def check_bimonoid_axioms(pres, max_degree):
    """Exhaustively verify the bimonoid axioms on basis words up to a degree.

    Checks coassociativity, the two counit laws, multiplicativity of the
    coproduct against the braided-square product, and multiplicativity of
    the counit.  Failures are collected with a witness word.
    """
    pres.ensure_confluent()
    ensure_bimonoid(pres)
    report = BimonoidReport(max_degree)

    def fail(kind, witness):
        report.failures.append((kind, witness))

    words = [w for d in range(max_degree + 1) for w in pres.graded_basis(d)]
    for w in words:
        cop = _coproduct_word(pres, w)
        left = tensor_apply_factor_elem(pres, cop, 0)
        right = tensor_apply_factor_elem(pres, cop, 1)
        if left != right:
            fail("coassociativity", pres.format_word(w))
        eps_left = {}
        eps_right = {}
        for (a, b), c in cop.items():
            if not a:
                add_term(eps_left, b, c)
            if not b:
                add_term(eps_right, a, c)
        if eps_left != {w: QQ(1)} or eps_right != {w: QQ(1)}:
            fail("counit", pres.format_word(w))
        report.checked += 1

    for u in words:
        du = pres.degree_of(u)
        if du == 0:
            continue
        for v in words:
            if pres.degree_of(v) == 0 or du + pres.degree_of(v) > max_degree:
                continue
            prod = pres.mul_words(u, v)
            lhs = coproduct(pres, prod)
            rhs = braided_square_multiply(
                pres, _coproduct_word(pres, u), _coproduct_word(pres, v))
            if lhs != rhs:
                fail("multiplicative", (pres.format_word(u), pres.format_word(v)))
            if pres.augment(prod) != pres.augment({u: QQ(1)}) * pres.augment({v: QQ(1)}):
                fail("counit-multiplicative",
                     (pres.format_word(u), pres.format_word(v)))
            report.checked += 1
    return report


def tensor_apply_factor_elem(pres, e, i):
    """Apply the coproduct to factor i of a tensor element."""
    out = {}
    for key, c in e.items():
        for pair, cw in _coproduct_word(pres, key[i]).items():
            add_term(out, key[:i] + pair + key[i + 1:], c * cw)
    return out
