"""Finite-dimensional associative unital algebras by structure constants.

An algebra has basis b_0, ..., b_{d-1} with ``b_i b_j = sum_k c[i][j][k] b_k``.
The table is stored sparsely, ``table[i][j] = {k: c_ijk}``.  Elements are
coefficient vectors, either dense lists or sparse dicts; the helpers below
say which they expect.

Multiplication matrices follow the row-vector convention of
:mod:`hochmorita.linalg`: ``left_matrix(x)`` is the matrix of ``y -> x y``
and ``right_matrix(x)`` that of ``y -> y x``, both applied as ``y @ M``.
"""
from dataclasses import dataclass, field as dc_field
from functools import cached_property
import itertools

from .errors import AlgebraError, DimensionError
from .linalg import (Field, Matrix, Span, Subspace, QQ, _axpy, dense, sparse,
                     kernel_vectors, left_kernel_vectors)


class Algebra:
    """Unital associative algebra given by a sparse structure-constant table."""

    def __init__(self, field: Field, dim: int, table, unit, labels=None, name=None):
        self.field = field
        self.dim = dim
        self.table = table
        self.unit = list(unit)
        if len(self.unit) != dim:
            raise DimensionError(f"unit has length {len(self.unit)}, expected {dim}")
        if len(table) != dim or any(len(r) != dim for r in table):
            raise DimensionError("structure table must be dim x dim")
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(dim)]
        self.name = name

    # construction -----------------------------------------------------

    @classmethod
    def from_entries(cls, field: Field, dim: int, entries, unit, labels=None, name=None):
        """Build from ``(i, j, k, value)`` tuples; repeated keys are summed."""
        table = [[{} for _ in range(dim)] for _ in range(dim)]
        p = field.p
        for i, j, k, v in entries:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise DimensionError(f"structure index ({i}, {j}, {k}) out of range")
            v = field(v)
            cell = table[i][j]
            y = cell.get(k, 0) + v
            if p is not None:
                y %= p
            if y:
                cell[k] = y
            else:
                cell.pop(k, None)
        return cls(field, dim, table, [field(u) for u in unit], labels, name)

    @classmethod
    def from_dense(cls, field: Field, consts, unit, labels=None, name=None):
        """Build from a nested list ``consts[i][j][k]``."""
        d = len(consts)
        entries = [(i, j, k, consts[i][j][k]) for i in range(d) for j in range(d)
                   for k in range(d) if consts[i][j][k]]
        return cls.from_entries(field, d, entries, unit, labels, name)

    def entries(self):
        """Sorted ``(i, j, k, c_ijk)`` tuples of nonzero constants."""
        out = []
        for i, row in enumerate(self.table):
            for j, cell in enumerate(row):
                for k in sorted(cell):
                    out.append((i, j, k, cell[k]))
        return out

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<Algebra{tag} dim={self.dim} over {self.field!r}>"

    # elements ---------------------------------------------------------

    def zero(self) -> list:
        return [self.field.zero] * self.dim

    def basis_vector(self, i) -> list:
        v = self.zero()
        v[i] = self.field.one
        return v

    @cached_property
    def unit_sparse(self) -> dict:
        return {i: x for i, x in enumerate(self.unit) if x}

    def element(self, coeffs) -> "AlgebraElement":
        return AlgebraElement(self, [self.field(c) for c in coeffs])

    def mul_sparse(self, x: dict, y: dict) -> dict:
        p = self.field.p
        table = self.table
        acc = {}
        for i, a in x.items():
            row = table[i]
            for j, b in y.items():
                ab = a * b
                for k, c in row[j].items():
                    acc[k] = acc.get(k, 0) + ab * c
        if p is None:
            return {k: v for k, v in acc.items() if v}
        return {k: v % p for k, v in acc.items() if v % p}

    def mul(self, x, y) -> list:
        """Product of two dense coefficient vectors."""
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionError("element length does not match algebra dimension")
        return dense(self.mul_sparse(sparse(x, self.field), sparse(y, self.field)),
                     self.dim, self.field)

    def mul_basis(self, i, j) -> dict:
        return dict(self.table[i][j])

    # multiplication operators ----------------------------------------

    def left_matrix(self, x: dict) -> Matrix:
        """Matrix of ``y -> x y`` (row convention)."""
        return Matrix(self.field, self.dim, self.dim,
                      [self.mul_sparse(x, {j: self.field.one}) for j in range(self.dim)])

    def right_matrix(self, x: dict) -> Matrix:
        """Matrix of ``y -> y x`` (row convention)."""
        return Matrix(self.field, self.dim, self.dim,
                      [self.mul_sparse({j: self.field.one}, x) for j in range(self.dim)])

    @cached_property
    def left_mats(self) -> list:
        one = self.field.one
        return [self.left_matrix({i: one}) for i in range(self.dim)]

    @cached_property
    def right_mats(self) -> list:
        one = self.field.one
        return [self.right_matrix({i: one}) for i in range(self.dim)]

    @cached_property
    def factorizations(self) -> list:
        """``factorizations[k]`` lists ``(i, j, c_ijk)`` with nonzero constant."""
        out = [[] for _ in range(self.dim)]
        for i, row in enumerate(self.table):
            for j, cell in enumerate(row):
                for k, c in cell.items():
                    out[k].append((i, j, c))
        return out

    def generated_subalgebra(self, gens) -> Subspace:
        """Span of all words in the basis elements ``gens`` (with 1)."""
        one = self.field.one
        sub = Subspace(self.field)
        if not self.unit_sparse:
            return sub
        sub.add(self.unit_sparse)
        frontier = [self.unit_sparse]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.mul_sparse(x, {g: one})
                    if sub.add(y):
                        new.append(y)
            frontier = new
        return sub

    @cached_property
    def generators(self) -> list:
        """Basis indices generating the algebra, chosen greedily in index order."""
        one = self.field.one
        gens = []
        sub = self.generated_subalgebra(gens)
        for i in range(self.dim):
            if sub.dim == self.dim:
                break
            if {i: one} in sub:
                continue
            gens.append(i)
            sub = self.generated_subalgebra(gens)
        return gens

    @cached_property
    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    @cached_property
    def grading(self):
        """Basis of Q-valued gradings compatible with the structure constants.

        A grading assigns ``w_i`` to each basis vector with
        ``w_i + w_j = w_k`` whenever ``c_ijk != 0``.  Returned as a list of
        weight tuples, one per basis element (each tuple has one entry per
        independent grading); bar complexes split along these weights.
        """
        return _gradings(self.dim, [(i, j, k) for i, row in enumerate(self.table)
                                    for j, cell in enumerate(row) for k in cell])


def _gradings(nvars, triples, extra=()):
    """Integer-valued solutions of w_i + w_j - w_k = 0 over the triples.

    ``extra`` holds additional linear relations as sparse dicts.  Weights
    are computed over Q and returned as tuples of Fractions (mpq).
    """
    rows = []
    for i, j, k in triples:
        r = {}
        for idx, s in ((i, 1), (j, 1), (k, -1)):
            r[idx] = r.get(idx, 0) + s
        r = {a: b for a, b in r.items() if b}
        if r:
            rows.append(r)
    rows.extend(extra)
    m = Matrix(QQ, len(rows), nvars, [{a: QQ(b) for a, b in r.items()} for r in rows])
    ker = kernel_vectors(m)
    return [tuple(v.get(i, QQ.zero) for v in ker) for i in range(nvars)]


class AlgebraElement:
    """Element of an :class:`Algebra`, for interactive use."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: Algebra, coeffs):
        if len(coeffs) != parent.dim:
            raise DimensionError("coefficient vector has the wrong length")
        self.parent = parent
        self.coeffs = list(coeffs)

    def _wrap(self, v):
        return AlgebraElement(self.parent, v)

    def __add__(self, other):
        F = self.parent.field
        return self._wrap([F.normalize(a + b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        F = self.parent.field
        return self._wrap([F.normalize(a - b) for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self._wrap(self.parent.mul(self.coeffs, other.coeffs))
        F = self.parent.field
        c = F(other)
        return self._wrap([F.normalize(a * c) for a in self.coeffs])

    def __rmul__(self, c):
        return self * c

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement) and other.parent is self.parent
                and other.coeffs == self.coeffs)

    __hash__ = None

    def __repr__(self):
        terms = [f"{c}*{l}" for c, l in zip(self.coeffs, self.parent.labels) if c]
        return " + ".join(terms) if terms else "0"


# ----------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    valid: bool
    failures: list = dc_field(default_factory=list)


def validate_algebra(a: Algebra, strict=True) -> ValidationReport:
    """Check associativity on all basis triples and two-sided unitality.

    With ``strict`` an :class:`AlgebraError` is raised on the first failure.
    """
    failures = []
    d = a.dim
    one = a.field.one
    for i in range(d):
        bi = {i: one}
        if a.mul_sparse(a.unit_sparse, bi) != bi or a.mul_sparse(bi, a.unit_sparse) != bi:
            failures.append(("unit", i))
            if strict:
                raise AlgebraError(f"unit fails on basis element {a.labels[i]}")
    for i, j in itertools.product(range(d), repeat=2):
        ij = a.table[i][j]
        for k in range(d):
            left = a.mul_sparse(ij, {k: one})
            right = a.mul_sparse({i: one}, a.table[j][k])
            if left != right:
                failures.append(("assoc", i, j, k))
                if strict:
                    raise AlgebraError(
                        f"associativity fails on ({a.labels[i]}, {a.labels[j]}, {a.labels[k]})")
    return ValidationReport(not failures, failures)


def multiply(a: Algebra, x, y) -> list:
    return a.mul(x, y)


def is_idempotent(a: Algebra, e) -> bool:
    es = {k: v for k, v in e.items() if v} if isinstance(e, dict) else sparse(e, a.field)
    return a.mul_sparse(es, es) == es


# ----------------------------------------------------------------------
# derived algebras


def opposite(a: Algebra) -> Algebra:
    table = [[dict(a.table[j][i]) for j in range(a.dim)] for i in range(a.dim)]
    return Algebra(a.field, a.dim, table, a.unit, [f"{l}^op" for l in a.labels],
                   f"{a.name}^op" if a.name else None)


def tensor(a: Algebra, b: Algebra) -> Algebra:
    """a (x) b with basis index ``i * dim(b) + j`` for ``a_i (x) b_j``."""
    if a.field != b.field:
        raise DimensionError("tensor product over different fields")
    F = a.field
    p = F.p
    da, db = a.dim, b.dim
    table = [[{} for _ in range(da * db)] for _ in range(da * db)]
    for i1, i2 in itertools.product(range(da), repeat=2):
        ca = a.table[i1][i2]
        if not ca:
            continue
        for j1, j2 in itertools.product(range(db), repeat=2):
            cb = b.table[j1][j2]
            if not cb:
                continue
            cell = table[i1 * db + j1][i2 * db + j2]
            for k1, x in ca.items():
                for k2, y in cb.items():
                    v = x * y if p is None else x * y % p
                    if v:
                        cell[k1 * db + k2] = v
    unit = [F.normalize(x * y) for x in a.unit for y in b.unit]
    labels = [f"{la}(x){lb}" for la in a.labels for lb in b.labels]
    return Algebra(F, da * db, table, unit, labels)


def enveloping(a: Algebra) -> Algebra:
    """A^op (x) A; basis index ``i * d + j`` for ``b_i^op (x) b_j``.

    A right module over it is an A-bimodule with ``m . (x^op (x) y) = x m y``.
    """
    return tensor(opposite(a), a)


def direct_product(*algs: Algebra) -> Algebra:
    """Product algebra with block-diagonal basis."""
    F = algs[0].field
    offs = list(itertools.accumulate([0] + [a.dim for a in algs]))
    d = offs[-1]
    table = [[{} for _ in range(d)] for _ in range(d)]
    unit = []
    labels = []
    for a, o in zip(algs, offs):
        for i in range(a.dim):
            for j in range(a.dim):
                table[o + i][o + j] = {o + k: c for k, c in a.table[i][j].items()}
        unit.extend(a.unit)
        labels.extend(a.labels)
    return Algebra(F, d, table, unit, labels)


def change_basis(a: Algebra, vectors, labels=None, name=None) -> Algebra:
    """The same algebra written in a new basis given by sparse vectors."""
    if len(vectors) != a.dim:
        raise DimensionError("a change of basis needs dim vectors")
    span = Span(a.field, a.dim, vectors)
    if span.dim != a.dim:
        raise AlgebraError("vectors do not form a basis")
    # coordinates in the new basis: solve through the canonical rref basis
    to_new = _coordinate_solver(a.field, vectors, a.dim)
    table = [[to_new(a.mul_sparse(x, y)) for y in vectors] for x in vectors]
    unit = dense(to_new(a.unit_sparse), a.dim, a.field)
    return Algebra(a.field, a.dim, table, unit, labels, name)


def _coordinate_solver(field: Field, vectors, n):
    """Function mapping a vector in span(vectors) to its coordinates.

    ``vectors`` must be linearly independent.
    """
    k = len(vectors)
    # tag each basis vector; reducing a target reports the combination
    sub = Subspace(field)
    for t, v in enumerate(vectors):
        if not sub.add(v, {t: field.one}):
            raise AlgebraError("vectors are linearly dependent")

    def coords(v: dict) -> dict:
        rem, combo = sub.reduce(v, track=True)
        if rem:
            raise AlgebraError("vector does not lie in the span")
        return {t: x for t, x in combo.items() if x and t < k}
    return coords


def coordinate_solver(field: Field, vectors, n):
    return _coordinate_solver(field, vectors, n)


def subalgebra(a: Algebra, vectors, labels=None, name=None):
    """Subalgebra spanned by sparse ``vectors`` (must be closed and contain 1).

    Returns ``(B, coords)`` where ``B`` uses the given vectors as basis and
    ``coords`` maps elements of the span to B-coordinates.  Raises when the
    span is not a unital subalgebra.
    """
    vectors = [dict(v) for v in vectors]
    coords = _coordinate_solver(a.field, vectors, a.dim)
    try:
        table = [[coords(a.mul_sparse(x, y)) for y in vectors] for x in vectors]
        unit = dense(coords(a.unit_sparse), len(vectors), a.field)
    except AlgebraError as exc:
        raise AlgebraError("span is not a unital subalgebra") from exc
    return Algebra(a.field, len(vectors), table, unit, labels, name), coords


def algebra_from_maps(field: Field, mats, labels=None, name=None):
    """Algebra of linear maps under composition.

    ``mats`` are square matrices in row convention (the map ``v -> v @ P``),
    linearly independent and closed under composition, with the identity in
    their span.  The product ``b_i b_j`` is the composite "apply b_j, then
    b_i", whose matrix is ``P_j @ P_i``.
    Returns ``(algebra, coords)`` where ``coords`` takes a flattened matrix
    (sparse dict over ``r * n + c``) to algebra coordinates.
    """
    if not mats:
        return Algebra(field, 0, [], [], labels, name), lambda v: {}
    n = mats[0].nrows
    flat = [_flatten(m) for m in mats]
    coords = _coordinate_solver(field, flat, n * n)
    k = len(mats)
    table = [[coords(_flatten(mats[j] @ mats[i])) for j in range(k)] for i in range(k)]
    unit = dense(coords(_flatten(Matrix.identity(field, n))), k, field)
    return Algebra(field, k, table, unit, labels, name), coords


def _flatten(m: Matrix) -> dict:
    n = m.ncols
    out = {}
    for r, row in enumerate(m.rows):
        for c, x in row.items():
            out[r * n + c] = x
    return out


def flatten_matrix(m: Matrix) -> dict:
    return _flatten(m)


# ----------------------------------------------------------------------
# ideals, quotients, centre


def centre(a: Algebra) -> list:
    """Basis of the centre as sparse vectors (kernel of commutators)."""
    gens = a.generators
    if not gens:
        return [dict(a.unit_sparse)] if a.dim else []
    blocks = None
    for g in gens:
        m = a.right_mats[g] - a.left_mats[g]
        blocks = m if blocks is None else blocks.hstack(m)
    return left_kernel_vectors(blocks)


def two_sided_ideal(a: Algebra, gens) -> Span:
    """Two-sided ideal generated by ``gens`` (sparse or dense vectors)."""
    F = a.field
    gens = [g if isinstance(g, dict) else sparse(g, F) for g in gens]
    one = F.one
    left = Subspace(F)
    for g in gens:
        left.add(g)
        for i in range(a.dim):
            left.add(a.mul_sparse({i: one}, g))
    both = Subspace(F)
    for x in left.basis():
        both.add(x)
        for j in range(a.dim):
            both.add(a.mul_sparse(x, {j: one}))
    return Span(F, a.dim, both.basis())


def ideal_product(a: Algebra, left, right) -> Span:
    """Span of products x*y for x in ``left`` and y in ``right`` (sparse lists)."""
    sub = Subspace(a.field)
    for x in left:
        for y in right:
            sub.add(a.mul_sparse(x, y))
    return Span(a.field, a.dim, sub.basis())


def is_two_sided_ideal(a: Algebra, vectors) -> bool:
    sub = Subspace(a.field, vectors)
    one = a.field.one
    for v in vectors:
        for i in range(a.dim):
            if a.mul_sparse({i: one}, v) not in sub or a.mul_sparse(v, {i: one}) not in sub:
                return False
    return True


@dataclass
class QuotientData:
    """A/I with the complement basis picked through standard vectors.

    ``complement`` lists the indices i whose images form the quotient
    basis; ``project`` sends a sparse A-vector to quotient coordinates.
    """
    algebra: Algebra
    ideal: Span
    complement: list
    _sub: Subspace

    def project(self, v: dict) -> dict:
        rem = self._sub.reduce(v)
        pos = {c: t for t, c in enumerate(self.complement)}
        return {pos[k]: x for k, x in rem.items()}

    def lift(self, coords: dict) -> dict:
        return {self.complement[t]: x for t, x in coords.items() if x}

    def projection_matrix(self, dim) -> Matrix:
        F = self.algebra.field
        one = F.one
        return Matrix(F, dim, self.algebra.dim,
                      [self.project({i: one}) for i in range(dim)])


def quotient_algebra(a: Algebra, ideal) -> QuotientData:
    """Quotient by a two-sided ideal (a Span or a list of sparse vectors)."""
    vecs = ideal.rows if isinstance(ideal, Span) else [dict(v) for v in ideal]
    if not is_two_sided_ideal(a, vecs):
        raise AlgebraError("not a two-sided ideal")
    span = ideal if isinstance(ideal, Span) else Span(a.field, a.dim, vecs)
    sub = Subspace(a.field, span.rows)
    comp = sub.complement_indices(a.dim)
    pos = {c: t for t, c in enumerate(comp)}

    def proj(v):
        return {pos[k]: x for k, x in sub.reduce(v).items()}

    one = a.field.one
    table = [[proj(a.table[i][j]) for j in comp] for i in comp]
    unit = dense(proj(a.unit_sparse), len(comp), a.field)
    q = Algebra(a.field, len(comp), table, unit, [a.labels[i] for i in comp],
                f"{a.name}/I" if a.name else None)
    return QuotientData(q, span, comp, sub)


def radical_trace_form(a: Algebra) -> Span:
    """Radical of the trace form ``(x, y) -> tr(left mult by xy)``.

    In characteristic zero this is the Jacobson radical.  In positive
    characteristic it only contains the radical, so callers use it as a
    heuristic there.
    """
    F = a.field
    d = a.dim
    one = F.one
    # t_k = trace of left multiplication by b_k
    t = []
    for k in range(d):
        s = F.zero
        for j in range(d):
            s += a.table[k][j].get(j, 0)
        t.append(F.normalize(s))
    # gram[i][j] = t(b_i b_j)
    rows = []
    for i in range(d):
        rows.append({j: v for j in range(d)
                     if (v := F.normalize(sum(c * t[k] for k, c in a.table[i][j].items())))})
    m = Matrix(F, d, d, rows)
    return Span(F, d, kernel_vectors(m))


# ----------------------------------------------------------------------
# Pierce decomposition


@dataclass
class CornerPart:
    """One Pierce summand ``p C q`` with its canonical basis."""
    span: Span

    @property
    def dim(self):
        return self.span.dim

    @property
    def basis(self):
        return self.span.rows


@dataclass
class PierceData:
    """Pierce decomposition of C along e and e' = 1 - e.

    A = eCe and B = e'Ce' are algebras in their own right; M = e'Ce is an
    (B, A)-bimodule and N = eCe' an (A, B)-bimodule.  ``adapted`` is C
    written in the concatenated basis A | M | N | B.
    """
    C: Algebra
    e: dict
    e_prime: dict
    A_part: CornerPart
    M_part: CornerPart
    N_part: CornerPart
    B_part: CornerPart
    A: Algebra
    B: Algebra

    def dims(self):
        return {"A": self.A_part.dim, "M": self.M_part.dim,
                "N": self.N_part.dim, "B": self.B_part.dim}

    @cached_property
    def adapted_basis(self) -> list:
        return (self.A_part.basis + self.M_part.basis + self.N_part.basis
                + self.B_part.basis)

    @cached_property
    def adapted(self) -> Algebra:
        labels = ([f"a{i}" for i in range(self.A_part.dim)]
                  + [f"m{i}" for i in range(self.M_part.dim)]
                  + [f"n{i}" for i in range(self.N_part.dim)]
                  + [f"b{i}" for i in range(self.B_part.dim)])
        return change_basis(self.C, self.adapted_basis, labels)

    def offsets(self):
        a, m, n = self.A_part.dim, self.M_part.dim, self.N_part.dim
        return {"A": 0, "M": a, "N": a + m, "B": a + m + n}


def _corner_span(c: Algebra, p: dict, q: dict) -> Span:
    one = c.field.one
    vecs = [c.mul_sparse(c.mul_sparse(p, {i: one}), q) for i in range(c.dim)]
    return Span(c.field, c.dim, [v for v in vecs if v])


def corner_algebra(c: Algebra, e: dict, span: Span, name=None) -> Algebra:
    """The corner eCe as an algebra with unit e, in the span's basis."""
    table = [[span.sparse_coords(c.mul_sparse(x, y)) for y in span.rows] for x in span.rows]
    unit = span.coords(e) if span.dim else []
    return Algebra(c.field, span.dim, table, unit, name=name)


def pierce_decompose(c: Algebra, e) -> PierceData:
    """Pierce decomposition of ``c`` along the idempotent ``e``."""
    F = c.field
    es = e if isinstance(e, dict) else sparse(e, F)
    if c.mul_sparse(es, es) != es:
        raise AlgebraError("e is not idempotent")
    ep = dict(c.unit_sparse)
    _axpy(ep, F.one, es, F.p)
    parts = {}
    for key, (p, q) in {"A": (es, es), "M": (ep, es), "N": (es, ep), "B": (ep, ep)}.items():
        parts[key] = _corner_span(c, p, q)
    total = sum(s.dim for s in parts.values())
    if total != c.dim:
        raise AlgebraError(f"Pierce summands have total dimension {total} != {c.dim}")
    A = corner_algebra(c, es, parts["A"], "eCe")
    B = corner_algebra(c, ep, parts["B"], "e'Ce'")
    return PierceData(c, es, ep, CornerPart(parts["A"]), CornerPart(parts["M"]),
                      CornerPart(parts["N"]), CornerPart(parts["B"]), A, B)


_PIERCE_SIDES = {"A": ("e", "e"), "M": ("e'", "e"), "N": ("e", "e'"), "B": ("e'", "e'")}


def pierce_closure_checks(pd: PierceData) -> dict:
    """Multiplication pattern of the Pierce summands.

    For summands pCq and rCs the products must vanish when q != r and lie
    in pCs otherwise; the summands must also span C directly.
    """
    C = pd.C
    parts = {"A": pd.A_part, "M": pd.M_part, "N": pd.N_part, "B": pd.B_part}
    by_sides = {v: k for k, v in _PIERCE_SIDES.items()}
    subs = {k: part.span.subspace() for k, part in parts.items()}
    out = {}
    for x, (p, q) in _PIERCE_SIDES.items():
        for y, (r, s) in _PIERCE_SIDES.items():
            prods = [C.mul_sparse(u, v) for u in parts[x].basis for v in parts[y].basis]
            if q != r:
                out[f"{x}{y}=0"] = not any(prods)
            else:
                target = by_sides[(p, s)]
                out[f"{x}{y}<={target}"] = all(w in subs[target] for w in prods)
    out["direct_sum"] = Subspace(C.field, pd.adapted_basis).dim == C.dim
    return out
