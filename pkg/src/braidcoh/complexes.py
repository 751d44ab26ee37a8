"""Complexes of graded vector spaces, chain-map lifting, homotopy solving.

Two layers live here.  The small explicit layer (GradedVectorSpace,
LinearMap, ComplexOfGVS) handles finite complexes such as the induced
trivial-coefficient cochain complex.  The generic layer works against any
"bimodule complex" object exposing

    max_hom_degree
    generators(n) -> [(label, internal_degree)]          (free sources only)
    basis(n, d)   -> ordered list of basis keys
    diff(n, key)  -> sparse vector in component n-1
    act_left(n, key, g) / act_right(n, key, g)           (g a generator id)
    t_act(n, key)

and is what chain-map lifting and homotopy search run on.  All solves are
per homological and internal degree, exact, and deterministic.
"""

from dataclasses import dataclass, field

from .errors import InvalidComplexError, LiftingError
from .lincomb import add_inplace
from .linalg import ExactSolver
from .scalars import QQ


# -- explicit finite complexes -------------------------------------------

class GradedVectorSpace:
    """Ordered basis labels per internal degree."""

    def __init__(self, bases):
        self.bases = {d: list(ls) for d, ls in bases.items() if ls}
        for d, ls in self.bases.items():
            if len(set(ls)) != len(ls):
                raise InvalidComplexError(f"duplicate labels in degree {d}")

    def degrees(self):
        return sorted(self.bases)

    def dim(self, d=None):
        if d is None:
            return sum(len(ls) for ls in self.bases.values())
        return len(self.bases.get(d, []))


class LinearMap:
    """Degreewise matrix between graded vector spaces.

    ``cols[d]`` lists, per source basis element of degree d, a sparse vector
    over target basis indices of degree d + shift.
    """

    def __init__(self, source, target, cols, shift=0):
        self.source = source
        self.target = target
        self.shift = shift
        self.cols = cols
        for d, vecs in cols.items():
            if len(vecs) != source.dim(d):
                raise InvalidComplexError(f"bad column count in degree {d}")

    def column(self, d, j):
        return self.cols.get(d, [{} for _ in range(self.source.dim(d))])[j]

    def compose_is_zero(self, earlier):
        """Check self ∘ earlier == 0 degreewise."""
        for d, vecs in earlier.cols.items():
            td = d + earlier.shift
            for vec in vecs:
                out = {}
                for i, c in vec.items():
                    add_inplace(out, self.column(td, i), c)
                if out:
                    return False
        return True


class ComplexOfGVS:
    """A complex indexed by homological degree with degreewise differentials.

    ``ascending=False`` means maps[n] : C_n -> C_{n-1} (chain convention);
    ``ascending=True`` means maps[n] : C_n -> C_{n+1} (cochain convention).
    """

    def __init__(self, spaces, maps, ascending=False, validate=True):
        self.spaces = spaces
        self.maps = maps
        self.ascending = ascending
        if validate:
            step = 1 if ascending else -1
            for n, m in maps.items():
                nxt = maps.get(n + step)
                if nxt is not None and not nxt.compose_is_zero(m):
                    raise InvalidComplexError(f"d² != 0 at degree {n}")

    def hom_degrees(self):
        return sorted(self.spaces)

    def homology_dims(self, hom_range=None, internal_range=None):
        """dim ker / im per (homological, internal) bidegree."""
        if hom_range is None:
            hom_range = self.hom_degrees()
        out = {}
        step = 1 if self.ascending else -1
        for n in hom_range:
            space = self.spaces.get(n)
            if space is None:
                continue
            degs = space.degrees() if internal_range is None else internal_range
            for d in degs:
                dim = space.dim(d)
                if dim == 0:
                    continue
                outgoing = self.maps.get(n)
                if outgoing is None or d not in outgoing.cols:
                    k = dim
                else:
                    k = len(ExactSolver(outgoing.cols[d]).kernel)
                incoming = self.maps.get(n - step)
                r = 0
                if incoming is not None:
                    src_d = d if incoming.shift == 0 else None
                    vecs = incoming.cols.get(src_d, []) if src_d is not None else []
                    r = ExactSolver(vecs).rank if vecs else 0
                out[(n, d)] = k - r
        return out

    def total_homology_dims(self, hom_range=None):
        table = self.homology_dims(hom_range)
        totals = {}
        for (n, _d), v in table.items():
            totals[n] = totals.get(n, 0) + v
        return totals


# -- the generic layer ---------------------------------------------------

def act_word_left(cx, n, word, vec):
    """Left action of a basis word on a sparse component vector."""
    for g in reversed(word):
        nxt = {}
        for key, c in vec.items():
            add_inplace(nxt, cx.act_left(n, key, g), c)
        vec = nxt
    return vec


def act_word_right(cx, n, word, vec):
    for g in word:
        nxt = {}
        for key, c in vec.items():
            add_inplace(nxt, cx.act_right(n, key, g), c)
        vec = nxt
    return vec


def diff_vec(cx, n, vec):
    out = {}
    for key, c in vec.items():
        add_inplace(out, cx.diff(n, key), c)
    return out


def t_act_vec(cx, n, vec, power=1):
    for _ in range(abs(power)):
        nxt = {}
        for key, c in vec.items():
            add_inplace(nxt, cx.t_act(n, key) if power > 0 else cx.t_act_inv(n, key), c)
        vec = nxt
    return vec


def _solver(cx, n, d, variant="default"):
    """Cached ExactSolver for d_n restricted to internal degree d."""
    cache = getattr(cx, "_solver_cache", None)
    if cache is None:
        cache = cx._solver_cache = {}
    key = (n, d, variant)
    got = cache.get(key)
    if got is not None:
        return got
    dom = cx.basis(n, d)
    cod = {k: i for i, k in enumerate(cx.basis(n - 1, d))}
    if variant == "alt":
        order = list(range(len(dom) - 1, -1, -1))
    else:
        order = list(range(len(dom)))
    cols = []
    for j in order:
        col = {}
        for key2, c in cx.diff(n, dom[j]).items():
            col[cod[key2]] = c
        cols.append(col)
    solver = ExactSolver(cols)
    got = (solver, dom, cod, order)
    cache[key] = got
    return got


def solve_boundary(cx, n, d, vec, variant="default"):
    """Solve d_n(x) = vec inside internal degree d; None if no solution."""
    solver, dom, cod, order = _solver(cx, n, d, variant)
    b = {}
    for key, c in vec.items():
        idx = cod.get(key)
        if idx is None:
            return None
        b[idx] = c
    sol = solver.solve(b)
    if sol is None:
        return None
    return {dom[order[j]]: c for j, c in sol.items()}


class ChainMap:
    """A bimodule chain map out of a free resolution, stored on generators."""

    def __init__(self, source, target, values):
        self.source = source
        self.target = target
        self.values = values            # n -> {generator label -> target vec}

    def on_generator(self, n, label):
        return self.values[n][label]

    def on_basis(self, n, key):
        a, label, b = key
        vec = dict(self.values[n][label])
        vec = act_word_right(self.target, n, b, vec)
        vec = act_word_left(self.target, n, a, vec)
        return vec

    def on_vec(self, n, vec):
        out = {}
        for key, c in vec.items():
            add_inplace(out, self.on_basis(n, key), c)
        return out

    def check_chain(self, n):
        """Exact d∘f = f∘d on every generator of source degree n."""
        for label, _deg in self.source.generators(n):
            lhs = diff_vec(self.target, n, self.values[n][label])
            rhs = self.on_vec(n - 1, self.source.diff(n, ((), label, ())))
            if lhs != rhs:
                return False
        return True


def lift_chain_map(source, target, base, n_max, variant="default"):
    """Lift a degree-0 bimodule map to a chain map source -> target.

    ``base`` assigns to each degree-0 generator of the source a vector in
    target component 0; it must already satisfy the augmentation square.
    Each step solves d(f_n(gen)) = f_{n-1}(d gen) exactly; failure means the
    target is not exact where the contract requires it.
    """
    values = {0: dict(base)}
    cmap = ChainMap(source, target, values)
    for n in range(1, n_max + 1):
        values[n] = {}
        for label, deg in source.generators(n):
            rhs = cmap.on_vec(n - 1, source.diff(n, ((), label, ())))
            sol = solve_boundary(target, n, deg, rhs, variant)
            if sol is None:
                raise LiftingError(
                    f"no lift at homological degree {n}, generator {label!r}")
            values[n][label] = sol
    return cmap


@dataclass
class HomotopyResult:
    found: bool
    homotopy: dict = field(default_factory=dict)
    witness: tuple = None
    window: tuple = None
    inconclusive: bool = False

    def __bool__(self):
        return self.found


def find_homotopy(source, target, delta, n_max, internal_degrees,
                  variant="default"):
    """Solve delta = d h + h d with h k-linear, degreewise and greedily.

    ``delta(n, key)`` gives the k-linear chain map on source basis keys.
    Works bottom-up: the choice made at degree n never obstructs degree n+1
    as long as the target is exact there, and a failed solve is returned as
    a witness bidegree instead of an answer.
    """
    h = {}
    for n in range(0, n_max + 1):
        if n > source.max_hom_degree:
            break
        h[n] = {}
        for d in internal_degrees:
            for key in source.basis(n, d):
                rhs = delta(n, key)
                if n > 0:
                    prev = h[n - 1]
                    for k2, c in source.diff(n, key).items():
                        add_inplace(rhs, prev[k2], -c)
                if not rhs:
                    h[n][key] = {}
                    continue
                sol = solve_boundary(target, n + 1, d, rhs, variant)
                if sol is None:
                    return HomotopyResult(False, h, witness=(n, d, key),
                                          window=(n_max, tuple(internal_degrees)))
                h[n][key] = sol
    return HomotopyResult(True, h, window=(n_max, tuple(internal_degrees)))
