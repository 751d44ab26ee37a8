"""Free bimodule resolutions with internal grading and t-action.

A resolution stores, per homological degree n >= 1, its free generators
(label, internal degree), the differential value of each generator in
degree n-1, and the t-action value in degree n.  Degree 0 is always the
free bimodule A(x)A on the single generator "1".  Elements are sparse
combinations keyed by (left word, generator label, right word).

Built-ins: the length-2 resolution of the Jordan plane and the uniform
family for the super Jordan plane, which is generated lazily degree by
degree since its formulas are uniform in n.
"""

import json
from dataclasses import dataclass, field

from .algebra import jordan, super_jordan
from .complexes import ComplexOfGVS, GradedVectorSpace, LinearMap
from .errors import InvalidComplexError, SchemaError
from .lincomb import add_inplace, add_term
from .linalg import ExactSolver
from .scalars import QQ, format_rational, parse_rational

UNIT = "1"


@dataclass
class ResGenerator:
    label: str
    degree: int
    d_value: dict          # element of component n-1 (empty for n = 0)
    t_value: dict          # element of component n


class FreeBimoduleResolution:
    def __init__(self, pres, complete, name=""):
        self.pres = pres
        self.complete = complete    # True if the resolution stops (no higher degrees)
        self.name = name
        self.degrees = {0: [ResGenerator(UNIT, 0, {}, {((), UNIT, ()): QQ(1)})]}
        self._extender = None

    def add_degree(self, n, gens):
        labels = [g.label for g in gens]
        if len(set(labels)) != len(labels):
            raise SchemaError(f"duplicate generator labels in degree {n}")
        self.degrees[n] = list(gens)

    def ensure(self, n):
        while n not in self.degrees:
            top = max(self.degrees)
            if self._extender is None or self.complete:
                break
            self._extender(self, top + 1)

    def max_degree(self, want=None):
        if want is not None:
            self.ensure(want)
        return max(self.degrees)

    def generators(self, n):
        self.ensure(n)
        return self.degrees.get(n, [])

    def generator(self, n, label):
        for g in self.generators(n):
            if g.label == label:
                return g
        raise KeyError((n, label))


# -- built-in resolutions -------------------------------------------------

def builtin_jordan(pres=None):
    """Length-2 resolution of the Jordan plane: A(x)A <- A(x)V(x)A <- A(x)R(x)A."""
    p = pres if pres is not None else jordan()
    x, y = (0,), (1,)
    res = FreeBimoduleResolution(p, complete=True, name="jordan")
    half = QQ(1, 2)
    res.add_degree(1, [
        ResGenerator("x", 1,
                     {(x, UNIT, ()): QQ(1), ((), UNIT, x): QQ(-1)},
                     {((), "x", ()): QQ(1)}),
        ResGenerator("y", 1,
                     {(y, UNIT, ()): QQ(1), ((), UNIT, y): QQ(-1)},
                     {((), "x", ()): QQ(1), ((), "y", ()): QQ(1)}),
    ])
    res.add_degree(2, [
        ResGenerator("r", 2,
                     {(y, "x", ()): QQ(1), ((), "y", x): QQ(1),
                      (x, "y", ()): QQ(-1), ((), "x", y): QQ(-1),
                      (x, "x", ()): half, ((), "x", x): half},
                     {((), "r", ()): QQ(1)}),
    ])
    return res


def _xp(n):
    return f"x^{n}"


def _y2x(k):
    return "y^2x" if k == 1 else f"y^2x^{k}"


def _super_jordan_degree(res, m):
    """Append homological degree m >= 2 of the super Jordan family."""
    x, y = (0,), (1,)
    yy, yx, xy = (1, 1), (1, 0), (0, 1)
    sign = QQ(1) if m % 2 == 0 else QQ(-1)       # (-1)^m
    below_x = _xp(m - 1) if m >= 3 else "x"
    if m == 2:
        d_x = {((), "x", x): QQ(1), (x, "x", ()): QQ(1)}
        d_y2 = {(yy, "x", ()): QQ(1), (y, "y", x): QQ(1), ((), "y", yx): QQ(1),
                (xy, "y", ()): QQ(-1), (x, "y", y): QQ(-1), ((), "x", yy): QQ(-1),
                (xy, "x", ()): QQ(-1), (x, "y", x): QQ(-1), ((), "x", yx): QQ(-1)}
    else:
        d_x = {(x, _xp(m - 1), ()): QQ(1), ((), _xp(m - 1), x): sign}
        d_y2 = {(yy, _xp(m - 1), ()): QQ(1), ((), _y2x(m - 2), x): sign,
                (x, _y2x(m - 2), ()): QQ(-1), (xy, _xp(m - 1), ()): QQ(-1),
                ((), _xp(m - 1), yy): QQ(-1), ((), _xp(m - 1), yx): QQ(-1)}
    t_x = {((), _xp(m), ()): sign}
    # the y^2x^{m-1} coefficient is (-1)^{m-1}: forced by t-equivariance of d
    t_y2 = {((), _xp(m), y): QQ(-1),
            (x, _xp(m), ()): -sign, (y, _xp(m), ()): sign,
            ((), _y2x(m - 1), ()): -sign}
    res.add_degree(m, [
        ResGenerator(_xp(m), m, d_x, t_x),
        ResGenerator(_y2x(m - 1), m + 1, d_y2, t_y2),
    ])


def builtin_super_jordan(n_max, pres=None):
    """The uniform resolution of the super Jordan plane through degree n_max."""
    if n_max < 1:
        raise SchemaError("n_max must be >= 1")
    p = pres if pres is not None else super_jordan()
    x, y = (0,), (1,)
    res = FreeBimoduleResolution(p, complete=False, name="super-jordan")
    res.add_degree(1, [
        ResGenerator("x", 1,
                     {(x, UNIT, ()): QQ(1), ((), UNIT, x): QQ(-1)},
                     {((), "x", ()): QQ(-1)}),
        ResGenerator("y", 1,
                     {(y, UNIT, ()): QQ(1), ((), UNIT, y): QQ(-1)},
                     {((), "x", ()): QQ(1), ((), "y", ()): QQ(-1)}),
    ])
    res._extender = _super_jordan_degree
    res.ensure(n_max)
    return res


# -- the resolution as a bimodule complex ---------------------------------

class FreeResolutionComplex:
    """Protocol adapter: per-(n, d) bases, differential, actions, t."""

    def __init__(self, res):
        self.res = res
        self.pres = res.pres
        self._basis_cache = {}
        self._gen_degree = {}

    @property
    def max_hom_degree(self):
        return self.res.max_degree()

    def generators(self, n):
        return [(g.label, g.degree) for g in self.res.generators(n)]

    def degree_of_key(self, n, key):
        a, label, b = key
        gd = self._gen_degree.get((n, label))
        if gd is None:
            gd = self._gen_degree[(n, label)] = self.res.generator(n, label).degree
        return self.pres.degree_of(a) + gd + self.pres.degree_of(b)

    def leftness(self, n, key):
        return len(key[0])

    def basis(self, n, d):
        key = (n, d)
        got = self._basis_cache.get(key)
        if got is not None:
            return got
        p = self.pres
        out = []
        for g in self.res.generators(n):
            rem = d - g.degree
            for i in range(rem + 1):
                for a in p.graded_basis(i):
                    for b in p.graded_basis(rem - i):
                        out.append((a, g.label, b))
        self._basis_cache[key] = out
        return out

    def _sandwich(self, n, a, value, b):
        """a . value . b expanded to normal form, value in component n."""
        p = self.pres
        out = {}
        for (va, lab, vb), c in value.items():
            left = p.mul_words(a, va) if a else {va: QQ(1)}
            right = p.mul_words(vb, b) if b else {vb: QQ(1)}
            for wl, cl in left.items():
                for wr, cr in right.items():
                    add_term(out, (wl, lab, wr), c * cl * cr)
        return out

    def diff(self, n, key):
        a, label, b = key
        return self._sandwich(n - 1, a, self.res.generator(n, label).d_value, b)

    def act_left(self, n, key, g):
        a, label, b = key
        p = self.pres
        out = {}
        for w, c in p.mul_words((g,), a).items():
            add_term(out, (w, label, b), c)
        return out

    def act_right(self, n, key, g):
        a, label, b = key
        p = self.pres
        out = {}
        for w, c in p.mul_words(b, (g,)).items():
            add_term(out, (a, label, w), c)
        return out

    def t_act(self, n, key):
        a, label, b = key
        p = self.pres
        out = {}
        ta = p.act_word(1, a)
        tb = p.act_word(1, b)
        tv = self.res.generator(n, label).t_value
        for wa, ca in ta.items():
            inner = self._sandwich(n, wa, tv, ())
            for (va, lab, vb), ci in inner.items():
                for wb, cb in tb.items():
                    right = p.mul_words(vb, wb)
                    for wr, cr in right.items():
                        add_term(out, (va, lab, wr), ca * ci * cb * cr)
        return out

    def aug(self, key):
        """Augmentation P_0 -> A on a degree-0 basis key."""
        a, _label, b = key
        return self.pres.mul_words(a, b)

    def collapsed_diff(self, n):
        """eps (x) id (x) eps of the differential, a matrix on generators."""
        out = {}
        for g in self.res.generators(n):
            col = {}
            for (a, lab, b), c in g.d_value.items():
                if not a and not b:
                    add_term(col, lab, c)
            out[g.label] = col
        return out

    def collapsed_t(self, n):
        out = {}
        for g in self.res.generators(n):
            col = {}
            for (a, lab, b), c in g.t_value.items():
                if not a and not b:
                    add_term(col, lab, c)
            out[g.label] = col
        return out


# -- validation ------------------------------------------------------------

@dataclass
class ValidationReport:
    ok: bool = True
    minimal: bool = True
    errors: list = field(default_factory=list)
    hom_range: int = 0
    internal_range: int = 0

    def fail(self, kind, witness):
        self.ok = False
        self.errors.append((kind, witness))


def validate(res, max_internal, hom_max=None):
    """Validate d^2 = 0, grading, t-equivariance, and exactness.

    Exactness is certified per internal degree <= max_internal by exact rank
    computations on the free k-bases, at every homological position where
    the data is conclusive (everywhere for a complete resolution, below the
    truncation for a lazily generated family).
    """
    if hom_max is None:
        hom_max = res.max_degree(max_internal)
    res.ensure(hom_max)
    hom_max = min(hom_max, res.max_degree())
    cx = FreeResolutionComplex(res)
    p = res.pres
    report = ValidationReport(hom_range=hom_max, internal_range=max_internal)

    for n in range(1, hom_max + 1):
        for g in res.generators(n):
            for (a, lab, b), _c in g.d_value.items():
                tgt = res.generator(n - 1, lab)
                if p.degree_of(a) + tgt.degree + p.degree_of(b) != g.degree:
                    report.fail("grading", (n, g.label, "differential"))
                if not p.is_normal({a: QQ(1)}) or not p.is_normal({b: QQ(1)}):
                    report.fail("normal-form", (n, g.label))
            for (a, lab, b), _c in g.t_value.items():
                tgt = res.generator(n, lab)
                if p.degree_of(a) + tgt.degree + p.degree_of(b) != g.degree:
                    report.fail("grading", (n, g.label, "t-action"))
            if any(not a and not b for (a, _l, b) in g.d_value):
                report.minimal = False

    # d^2 = 0 (mu ∘ d_1 = 0 at the bottom)
    for g in res.generators(1):
        total = {}
        for (a, _lab, b), c in g.d_value.items():
            add_inplace(total, p.mul_words(a, b), c)
        if total:
            report.fail("d2", (1, g.label))
    for n in range(2, hom_max + 1):
        for g in res.generators(n):
            dd = {}
            for key, c in g.d_value.items():
                add_inplace(dd, cx.diff(n - 1, key), c)
            if dd:
                report.fail("d2", (n, g.label))

    # t-equivariance: t(d g) = d(t g)
    for n in range(1, hom_max + 1):
        for g in res.generators(n):
            lhs = {}
            for key, c in g.d_value.items():
                add_inplace(lhs, cx.t_act(n - 1, key), c)
            rhs = {}
            for key, c in g.t_value.items():
                add_inplace(rhs, cx.diff(n, key), c)
            if lhs != rhs:
                report.fail("t-equivariance", (n, g.label))

    # collapsed t must be invertible levelwise (block diagonal by degree)
    for n in range(0, hom_max + 1):
        mat = cx.collapsed_t(n)
        labels = [g.label for g in res.generators(n)]
        idx = {l: i for i, l in enumerate(labels)}
        cols = [{idx[l]: c for l, c in mat[lab].items()} for lab in labels]
        if ExactSolver(cols).rank != len(labels):
            report.fail("t-invertibility", n)

    # exactness by exact rank counts, internal degree by degree; skipped when
    # the structural checks above already failed (bases assume clean grading)
    if not report.ok:
        return report
    conclusive_top = hom_max if res.complete else hom_max - 1
    for d in range(0, max_internal + 1):
        aug_cols = []
        abasis = {w: i for i, w in enumerate(p.graded_basis(d))}
        for key in cx.basis(0, d):
            aug_cols.append({abasis[w]: c for w, c in cx.aug(key).items()})
        aug_solver = ExactSolver(aug_cols)
        if aug_solver.rank != len(abasis):
            report.fail("exactness", ("augmentation not surjective", d))
        kernel_dim = len(aug_solver.kernel)
        for n in range(1, conclusive_top + 1):
            cod = {k: i for i, k in enumerate(cx.basis(n - 1, d))}
            cols = []
            for key in cx.basis(n, d):
                cols.append({cod[k2]: c for k2, c in cx.diff(n, key).items()})
            solver = ExactSolver(cols)
            if solver.rank != kernel_dim:
                report.fail("exactness", (n - 1, d))
            kernel_dim = len(solver.kernel)
        if res.complete and conclusive_top == hom_max:
            if kernel_dim != 0:
                report.fail("exactness", (hom_max, d, "kernel at top"))
    return report


# -- induced trivial-coefficient cochain complex ---------------------------

def induced_trivial_cochain(res, hom_max=None):
    """Hom_AA(P, k) as an explicit cochain complex on generator duals.

    Applying the augmentation to both outer strands of each differential
    entry gives the coboundary matrix; for a minimal resolution every entry
    dies and the complex has zero differentials.
    """
    if hom_max is None:
        hom_max = res.max_degree()
    res.ensure(hom_max)
    hom_max = min(hom_max, res.max_degree())
    cx = FreeResolutionComplex(res)
    spaces = {}
    for n in range(hom_max + 1):
        bases = {}
        for g in res.generators(n):
            bases.setdefault(g.degree, []).append(g.label)
        spaces[n] = GradedVectorSpace(bases)
    maps = {}
    for n in range(hom_max):
        collapsed = cx.collapsed_diff(n + 1)      # columns over level-n labels
        cols = {}
        for d in spaces[n].degrees():
            src = spaces[n].bases[d]
            tgt = {l: i for i, l in enumerate(spaces[n + 1].bases.get(d, []))}
            vecs = []
            for lab in src:
                col = {}
                for glab, c in ((gl, vv.get(lab)) for gl, vv in collapsed.items()):
                    if c and glab in tgt:
                        col[tgt[glab]] = c
                vecs.append(col)
            cols[d] = vecs
        maps[n] = LinearMap(spaces[n], spaces[n + 1], cols)
    return ComplexOfGVS(spaces, maps, ascending=True)


def cohomology_dims(res, hom_max):
    """H^n(A, k) dimensions through hom_max via the induced complex."""
    cplx = induced_trivial_cochain(res, hom_max + 1 if not res.complete else None)
    totals = cplx.total_homology_dims(range(hom_max + 1))
    return [totals.get(n, 0) for n in range(hom_max + 1)]


# -- serialization ----------------------------------------------------------

def _term_to_json(pres, key, coeff):
    a, lab, b = key
    return {"a": pres.format_word(a), "gen": lab, "b": pres.format_word(b),
            "coeff": format_rational(coeff)}


def _term_from_json(pres, obj):
    try:
        a = pres.parse_word(obj["a"])
        b = pres.parse_word(obj["b"])
        lab = obj["gen"]
        c = parse_rational(obj["coeff"])
    except (KeyError, ValueError) as exc:
        raise SchemaError(f"bad resolution term {obj!r}: {exc}") from None
    return (a, lab, b), c


def serialize_resolution(res):
    out = {"algebra": res.name or None, "degrees": []}
    for n in sorted(res.degrees):
        if n == 0:
            continue
        gens = []
        dmap = {}
        for g in res.degrees[n]:
            gens.append({
                "label": g.label, "degree": g.degree,
                "t_action": [_term_to_json(res.pres, k, c)
                             for k, c in sorted(g.t_value.items())],
            })
            dmap[g.label] = [_term_to_json(res.pres, k, c)
                             for k, c in sorted(g.d_value.items())]
        out["degrees"].append({"n": n, "generators": gens, "d": dmap})
    return out


def parse_resolution(data, pres, max_internal=8, check=True):
    """Parse (and by default validate) a resolution JSON object."""
    if isinstance(data, str):
        data = json.loads(data)
    if "degrees" not in data or not isinstance(data["degrees"], list):
        raise SchemaError("resolution file needs a 'degrees' list")
    res = FreeBimoduleResolution(pres, complete=True,
                                 name=data.get("algebra") or "user")
    for block in sorted(data["degrees"], key=lambda b: b.get("n", -1)):
        n = block.get("n")
        if not isinstance(n, int) or n < 1:
            raise SchemaError(f"bad homological degree {n!r}")
        gens = []
        dmap = block.get("d", {})
        for gobj in block.get("generators", []):
            try:
                label = gobj["label"]
                degree = int(gobj["degree"])
                t_terms = gobj["t_action"]
            except (KeyError, TypeError, ValueError):
                raise SchemaError(f"bad generator entry {gobj!r} in degree {n}") \
                    from None
            t_value = {}
            for tobj in t_terms:
                k, c = _term_from_json(pres, tobj)
                add_term(t_value, k, c)
            if label not in dmap:
                raise SchemaError(f"missing differential for {label!r} in degree {n}")
            d_value = {}
            for tobj in dmap[label]:
                k, c = _term_from_json(pres, tobj)
                add_term(d_value, k, c)
            gens.append(ResGenerator(label, degree, d_value, t_value))
        res.add_degree(n, gens)
    if sorted(res.degrees) != list(range(len(res.degrees))):
        raise SchemaError("homological degrees must be contiguous from 1")
    if check:
        report = validate(res, max_internal)
        if not report.ok:
            raise InvalidComplexError(
                f"resolution failed validation: {report.errors[:3]}")
    return res


def builtin_resolution(name, n_max=6):
    if name == "jordan":
        return builtin_jordan()
    if name == "super-jordan":
        return builtin_super_jordan(n_max)
    raise SchemaError(f"unknown builtin resolution {name!r}")
