"""Exact sparse linear algebra over the rationals.

Matrices are kept sparse throughout: a matrix is either a list of row dicts
``{col_index: QQ}`` or, for the solver, a list of column dicts.  Everything
is exact; there is no pivoting heuristic beyond a fixed deterministic order,
which keeps all outputs reproducible run to run.
"""

from .lincomb import add_inplace
from .scalars import QQ


def rref(rows, col_order=None):
    """Reduced row echelon form of a list of sparse rows.

    Returns (reduced_rows, pivots) where pivots is a list of
    (row_index, col) pairs in elimination order; rank = len(pivots).
    Rows reduced to zero stay in place as empty dicts.
    """
    work = [dict(r) for r in rows]
    if col_order is None:
        col_order = sorted({c for r in rows for c in r})
    pivots = []
    used = set()
    for col in col_order:
        piv = None
        for i, r in enumerate(work):
            if i not in used and col in r:
                piv = i
                break
        if piv is None:
            continue
        row = work[piv]
        inv = 1 / row[col]
        if inv != 1:
            work[piv] = row = {c: v * inv for c, v in row.items()}
        for i, other in enumerate(work):
            if i != piv and col in other:
                add_inplace(other, row, -other[col])
        pivots.append((piv, col))
        used.add(piv)
    return work, pivots


def rank(rows):
    return len(rref(rows)[1])


class ExactSolver:
    """Incremental exact solver for M x = b with many right-hand sides.

    ``columns`` is a list of sparse codomain vectors (dicts keyed by integer
    row indices).  Columns are eliminated in the given order; a dependent
    column immediately yields a kernel vector, so the kernel basis comes for
    free.  solve() returns the solution supported on the earliest
    independent columns, with all free coordinates zero, matching the
    deterministic lifting contract.
    """

    def __init__(self, columns):
        self.ncols = len(columns)
        self._by_lead = {}      # leading row index -> (vec, combo)
        self.pivot_cols = []
        self.kernel = []
        for j, col in enumerate(columns):
            rem, combo = self._reduce(dict(col))
            if rem:
                lead = min(rem)
                inv = 1 / rem[lead]
                vec = {r: v * inv for r, v in rem.items()}
                cmb = {j: inv}
                add_inplace(cmb, combo, inv)
                self._by_lead[lead] = (vec, cmb)
                self.pivot_cols.append(j)
            else:
                ker = {j: QQ(1)}
                add_inplace(ker, combo)
                self.kernel.append(ker)

    def _reduce(self, vec):
        # reduce vec against the eliminated columns, tracking the combination
        combo = {}
        while vec:
            lead = min(vec)
            hit = self._by_lead.get(lead)
            if hit is None:
                # no pivot on this row: scan for any other reducible row
                reducible = [r for r in vec if r in self._by_lead]
                if not reducible:
                    return vec, combo
                lead = min(reducible)
                hit = self._by_lead[lead]
            basis_vec, basis_cmb = hit
            c = vec[lead]
            add_inplace(vec, basis_vec, -c)
            add_inplace(combo, basis_cmb, -c)
        return vec, combo

    @property
    def rank(self):
        return len(self.pivot_cols)

    def solve(self, b):
        """One exact solution of M x = b, or None if inconsistent."""
        rem, combo = self._reduce(dict(b))
        if rem:
            return None
        return {j: -c for j, c in combo.items() if c}


def kernel_basis(columns):
    """Basis of {x : M x = 0} for a matrix given by sparse columns."""
    return ExactSolver(columns).kernel


def image_basis(columns):
    """The independent columns of M, a basis of its image."""
    solver = ExactSolver(columns)
    return [dict(columns[j]) for j in solver.pivot_cols]


class QuotientSpace:
    """Ambient space modulo the span of relation vectors, with a section.

    The ambient basis is an ordered list of hashable labels.  Relations are
    put in reduced row echelon form; the quotient basis consists of the
    non-pivot labels, and the canonical representative of a class is the
    reduction of any representative, which is supported on those labels.
    """

    def __init__(self, labels, relations):
        self.labels = list(labels)
        self.index = {l: i for i, l in enumerate(self.labels)}
        rows = []
        for rel in relations:
            row = {self.index[l]: c for l, c in rel.items() if c}
            if row:
                rows.append(row)
        reduced, pivots = rref(rows, col_order=range(len(self.labels)))
        self._pivot_rows = {col: reduced[r] for r, col in pivots}
        pivset = {col for _, col in pivots}
        self.basis = [l for i, l in enumerate(self.labels) if i not in pivset]
        self._basis_index = {l: i for i, l in enumerate(self.basis)}

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, vec):
        """Canonical ambient representative of the class of vec."""
        out = {}
        for l, c in vec.items():
            if c:
                out[self.index[l]] = out.get(self.index[l], QQ(0)) + c
        out = {i: c for i, c in out.items() if c}
        for i in sorted(out):
            if i in self._pivot_rows and i in out:
                add_inplace(out, self._pivot_rows[i], -out[i])
        return {self.labels[i]: c for i, c in out.items()}

    def project(self, vec):
        """Coordinates of the class of vec over the quotient basis."""
        return self.reduce(vec)

    def lift(self, qvec):
        """The canonical representative (the RREF section)."""
        return dict(qvec)
