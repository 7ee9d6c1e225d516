"""Exact linear algebra over Q and prime fields F_p.

Scalars are ``gmpy2.mpq`` for Q and Python ints in ``[0, p)`` for F_p.
Sparse vectors are dicts ``{index: nonzero scalar}``; a :class:`Matrix`
stores one such dict per row.  Linear maps act on row vectors from the
right (``v -> v @ M``), so the image of a map is the row space of its
matrix.

Pivoting is deterministic.  :func:`rref` picks the leftmost available
pivot column and the first row holding it; the result is the unique
reduced row echelon form, whichever of the dense or sparse paths produced
it.  :class:`Subspace` keeps an echelon basis with pivot at the *largest*
index, which is the cheap choice for incremental rank and span tests and
gives complements that agree with greedy extension through the standard
basis in index order.
"""
from fractions import Fraction
import heapq

from gmpy2 import mpq, is_prime

from . import config
from .errors import DimensionError

# Above this fraction of nonzero entries rref switches to the dense path.
DENSE_THRESHOLD = 0.25

_MPQ = type(mpq(0))


class Field:
    """The rationals when ``p`` is None, otherwise the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p=None):
        if p is not None:
            p = int(p)
            if p < 2 or not is_prime(p):
                raise ValueError(f"{p} is not a prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        """Coerce an int, Fraction, mpq or ``"num/den"`` string into the field."""
        if isinstance(x, float):
            raise TypeError("floats are not accepted as exact scalars")
        p = self.p
        if p is None:
            if isinstance(x, str):
                return mpq(Fraction(x.strip()))
            return mpq(x)
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, (Fraction, _MPQ)):
            num, den = int(x.numerator), int(x.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
            return num * pow(den, -1, p) % p
        return int(x) % p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / mpq(x)
        return pow(int(x), self.p - 2, self.p)

    def div(self, x, y):
        if self.p is None:
            return mpq(x) / y
        return x * self.inv(y) % self.p

    def normalize(self, x):
        return x if self.p is None else x % self.p

    def format(self, x) -> str | int:
        """JSON-friendly form: ``"num/den"`` string for Q, int for F_p."""
        if self.p is None:
            return str(mpq(x))
        return int(x) % self.p


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


# ----------------------------------------------------------------------
# sparse vector helpers


def _axpy(v, f, w, p):
    """v -= f * w in place."""
    if p is None:
        for k, x in w.items():
            y = v.get(k, 0) - f * x
            if y:
                v[k] = y
            else:
                v.pop(k, None)
    else:
        for k, x in w.items():
            y = (v.get(k, 0) - f * x) % p
            if y:
                v[k] = y
            else:
                v.pop(k, None)


def _scaled(w, f, p):
    if p is None:
        return {k: x * f for k, x in w.items()}
    return {k: x * f % p for k, x in w.items()}


def sparse(dense, field: Field) -> dict:
    """Sparse dict of a dense sequence (entries are coerced)."""
    out = {}
    for i, x in enumerate(dense):
        if x:
            y = field(x)
            if y:
                out[i] = y
    return out


def dense(vec: dict, n: int, field: Field) -> list:
    z = field.zero
    out = [z] * n
    for i, x in vec.items():
        out[i] = x
    return out


def sparse_add(u: dict, v: dict, field: Field, scale=1) -> dict:
    """u + scale * v as a new dict."""
    out = dict(u)
    _axpy(out, -scale if field.p is None else (-scale) % field.p, v, field.p)
    return out


def sparse_scale(v: dict, c, field: Field) -> dict:
    if not c:
        return {}
    return _scaled(v, c, field.p)


# ----------------------------------------------------------------------
# matrices


class Matrix:
    """Sparse matrix over a :class:`Field`, stored by rows."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        elif len(rows) != nrows:
            raise DimensionError(f"expected {nrows} rows, got {len(rows)}")
        self.rows = rows

    # construction -----------------------------------------------------

    @classmethod
    def from_dense(cls, field: Field, data, ncols=None):
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise DimensionError("ragged matrix data")
        return cls(field, len(data), ncols, [sparse(r, field) for r in data])

    @classmethod
    def from_sparse_rows(cls, field: Field, ncols: int, rows):
        return cls(field, len(rows), ncols, [dict(r) for r in rows])

    @classmethod
    def from_columns(cls, field: Field, nrows: int, cols):
        m = cls(field, nrows, len(cols))
        for j, c in enumerate(cols):
            for i, x in c.items():
                m.rows[i][j] = x
        return m

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int):
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int):
        one = field.one
        return cls(field, n, n, [{i: one} for i in range(n)])

    # access -----------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, self.field.zero)

    def dense(self) -> list:
        return [dense(r, self.ncols, self.field) for r in self.rows]

    def row(self, i) -> list:
        return dense(self.rows[i], self.ncols, self.field)

    def column(self, j) -> dict:
        return {i: r[j] for i, r in enumerate(self.rows) if j in r}

    def columns(self) -> list:
        cols = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                cols[j][i] = x
        return cols

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def density(self) -> float:
        size = self.nrows * self.ncols
        return self.nnz() / size if size else 0.0

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # arithmetic -------------------------------------------------------

    def _check_field(self, other):
        if self.field != other.field:
            raise DimensionError("matrices over different fields")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self.rows == other.rows)

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, self.columns())

    @property
    def T(self):
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check_field(other)
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            return Matrix(self.field, self.nrows, other.ncols,
                          [other.apply_sparse(r) for r in self.rows])
        return NotImplemented

    def __rmatmul__(self, vec):
        # dense row vector times matrix
        return self.apply(vec)

    def apply(self, vec) -> list:
        """Dense row vector ``vec`` times this matrix, as a dense list."""
        if len(vec) != self.nrows:
            raise DimensionError(f"vector of length {len(vec)} against {self.shape}")
        return dense(self.apply_sparse({i: x for i, x in enumerate(vec) if x}),
                     self.ncols, self.field)

    def apply_sparse(self, vec: dict) -> dict:
        """Sparse row vector times this matrix."""
        p = self.field.p
        acc = {}
        rows = self.rows
        for k, a in vec.items():
            for j, b in rows[k].items():
                acc[j] = acc.get(j, 0) + a * b
        if p is None:
            return {j: x for j, x in acc.items() if x}
        return {j: x % p for j, x in acc.items() if x % p}

    def _combine(self, other, sign):
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        p = self.field.p
        rows = []
        for a, b in zip(self.rows, other.rows):
            r = dict(a)
            _axpy(r, -sign if p is None else (-sign) % p, b, p)
            rows.append(r)
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(self.field, self.nrows, self.ncols,
                      [sparse_scale(r, c, self.field) for r in self.rows])

    def kron(self, other) -> "Matrix":
        """Kronecker product, row index ``i * other.nrows + k``."""
        self._check_field(other)
        p = self.field.p
        rows = []
        for ra in self.rows:
            for rb in other.rows:
                r = {}
                for j, x in ra.items():
                    base = j * other.ncols
                    for l, y in rb.items():
                        v = x * y if p is None else x * y % p
                        if v:
                            r[base + l] = v
                rows.append(r)
        return Matrix(self.field, self.nrows * other.nrows, self.ncols * other.ncols, rows)

    def hstack(self, other) -> "Matrix":
        self._check_field(other)
        if self.nrows != other.nrows:
            raise DimensionError("hstack needs equal row counts")
        off = self.ncols
        rows = []
        for a, b in zip(self.rows, other.rows):
            r = dict(a)
            r.update({off + j: x for j, x in b.items()})
            rows.append(r)
        return Matrix(self.field, self.nrows, self.ncols + other.ncols, rows)

    def vstack(self, other) -> "Matrix":
        self._check_field(other)
        if self.ncols != other.ncols:
            raise DimensionError("vstack needs equal column counts")
        return Matrix(self.field, self.nrows + other.nrows, self.ncols,
                      [dict(r) for r in self.rows] + [dict(r) for r in other.rows])

    def rank(self) -> int:
        return rank(self)


# ----------------------------------------------------------------------
# reduced row echelon form


def _rref_sparse(m: Matrix):
    p = m.field.p
    piv = {}
    for r in m.rows:
        if not r:
            continue
        v = dict(r)
        while v:
            c = min(v)
            pr = piv.get(c)
            if pr is None:
                break
            _axpy(v, v[c], pr, p)
        if v:
            c = min(v)
            piv[c] = _scaled(v, m.field.inv(v[c]), p)
    # back substitution, highest pivot first
    for c in sorted(piv, reverse=True):
        row = piv[c]
        for k in sorted(k for k in row if k != c and k in piv):
            f = row.get(k)
            if f:
                _axpy(row, f, piv[k], p)
    order = sorted(piv)
    return [piv[c] for c in order], order


def _rref_dense(m: Matrix):
    F = m.field
    p = F.p
    a = m.dense()
    nr, nc = m.nrows, m.ncols
    r = 0
    pivots = []
    for c in range(nc):
        if r == nr:
            break
        i = next((i for i in range(r, nr) if a[i][c]), None)
        if i is None:
            continue
        a[r], a[i] = a[i], a[r]
        inv = F.inv(a[r][c])
        row = [F.normalize(x * inv) for x in a[r]]
        a[r] = row
        for k in range(nr):
            if k != r:
                f = a[k][c]
                if f:
                    rk = a[k]
                    if p is None:
                        a[k] = [x - f * y for x, y in zip(rk, row)]
                    else:
                        a[k] = [(x - f * y) % p for x, y in zip(rk, row)]
        pivots.append(c)
        r += 1
    return [sparse(a[i], F) for i in range(r)], pivots


def rref(m: Matrix):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` has the same shape as ``m`` (zero
    rows at the bottom) and ``pivots`` lists the pivot columns in order.
    """
    if m.density() > DENSE_THRESHOLD:
        rows, pivots = _rref_dense(m)
    else:
        rows, pivots = _rref_sparse(m)
    rows = rows + [{} for _ in range(m.nrows - len(rows))]
    return Matrix(m.field, m.nrows, m.ncols, rows), pivots


def rref_rank(m: Matrix):
    """``(R, rank)`` with ``R`` the reduced row echelon form of ``m``."""
    r, pivots = rref(m)
    return r, len(pivots)


def rank(m: Matrix) -> int:
    sub = Subspace(m.field)
    for r in m.rows:
        sub.add(r)
    return sub.dim


def rank_of_vectors(vectors, field: Field) -> int:
    sub = Subspace(field)
    for v in vectors:
        sub.add(v)
    return sub.dim


def kernel_vectors(m: Matrix) -> list:
    """Sparse basis of ``{x : m @ x = 0}`` (x a column vector).

    One vector per free column, in increasing order; the free coordinate is
    1 and the pivot coordinates are read off the reduced echelon form.
    """
    r, pivots = rref(m)
    F = m.field
    p = F.p
    pivset = set(pivots)
    out = []
    prow = {c: r.rows[i] for i, c in enumerate(pivots)}
    # column f of the rref, restricted to pivot rows
    cols = {}
    for c, row in prow.items():
        for j, x in row.items():
            if j not in pivset:
                cols.setdefault(j, {})[c] = x
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = {f: F.one}
        for c, x in cols.get(f, {}).items():
            v[c] = -x if p is None else (-x) % p
        out.append(v)
    if config.debug():
        _check_kernel(m, out, len(pivots))
    return out


def _check_kernel(m: Matrix, vecs, rk):
    """Rank-nullity and exact annihilation, for debug runs."""
    if rk + len(vecs) != m.ncols:
        raise AssertionError(f"rank-nullity fails: {rk} + {len(vecs)} != {m.ncols}")
    F = m.field
    for v in vecs:
        for row in m.rows:
            s = sum(x * v[j] for j, x in row.items() if j in v)
            if F.normalize(s):
                raise AssertionError("kernel vector is not annihilated")


def kernel_basis(m: Matrix) -> Matrix:
    """Matrix whose columns form a basis of the null space of ``m``."""
    vecs = kernel_vectors(m)
    return Matrix.from_columns(m.field, m.ncols, vecs)


def left_kernel_vectors(m: Matrix) -> list:
    """Sparse basis of ``{v : v @ m = 0}`` (v a row vector)."""
    return kernel_vectors(m.transpose())


def solve_linear(m: Matrix, b):
    """A solution ``x`` of ``m @ x = b`` or None when inconsistent.

    ``b`` is a dense sequence of length ``m.nrows``.  Free variables are
    set to zero, so the answer is deterministic.
    """
    if len(b) != m.nrows:
        raise DimensionError(f"right-hand side of length {len(b)} for {m.shape}")
    F = m.field
    nc = m.ncols
    rows = []
    for r, bi in zip(m.rows, b):
        r = dict(r)
        bi = F(bi)
        if bi:
            r[nc] = bi
        rows.append(r)
    aug = Matrix(F, m.nrows, nc + 1, rows)
    r, pivots = rref(aug)
    if pivots and pivots[-1] == nc:
        return None
    x = [F.zero] * nc
    for i, c in enumerate(pivots):
        x[c] = r.rows[i].get(nc, F.zero)
    return x


def row_space_basis(m: Matrix) -> list:
    """Nonzero rows of the reduced echelon form, as sparse dicts."""
    r, pivots = rref(m)
    return [r.rows[i] for i in range(len(pivots))]


# ----------------------------------------------------------------------
# incremental subspaces


class Subspace:
    """Subspace of F^n kept in echelon form, pivot at the largest index.

    Vectors are sparse dicts.  Each stored basis vector has coefficient 1 at
    its pivot.  When ``add`` is given a ``tag`` (a sparse dict in some other
    index space), the tag is carried through eliminations, so reducing a
    vector also reports which combination of tagged inputs was subtracted.
    """

    __slots__ = ("field", "p", "piv", "tags")

    def __init__(self, field: Field, vectors=()):
        self.field = field
        self.p = field.p
        self.piv = {}
        self.tags = {}
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.piv)

    def __len__(self):
        return len(self.piv)

    def pivots(self) -> list:
        return sorted(self.piv)

    def basis(self) -> list:
        return [dict(self.piv[c]) for c in sorted(self.piv)]

    def copy(self) -> "Subspace":
        s = Subspace(self.field)
        s.piv = {c: dict(v) for c, v in self.piv.items()}
        s.tags = {c: dict(t) for c, t in self.tags.items()}
        return s

    def _leading_reduce(self, v, tag):
        p = self.p
        piv = self.piv
        tags = self.tags
        while v:
            c = max(v)
            pr = piv.get(c)
            if pr is None:
                return c
            f = v[c]
            if tag is not None:
                t = tags.get(c)
                if t:
                    _axpy(tag, f, t, p)
            _axpy(v, f, pr, p)
        return None

    def reduce(self, v: dict, track=False):
        """Fully reduce ``v``: the result has no entries at pivot positions.

        With ``track`` returns ``(remainder, combo)`` where
        ``v = remainder + sum(combo[t] * tagged_input_t)`` up to untagged
        basis vectors.
        """
        p = self.p
        piv = self.piv
        v = dict(v)
        tag = {} if track else None
        heap = [-k for k in v if k in piv]
        heapq.heapify(heap)
        while heap:
            k = -heapq.heappop(heap)
            f = v.get(k)
            if not f:
                continue
            pr = piv[k]
            for j, x in pr.items():
                y = v.get(j, 0) - f * x
                if p is not None:
                    y %= p
                if y:
                    if j not in v and j in piv:
                        heapq.heappush(heap, -j)
                    v[j] = y
                else:
                    v.pop(j, None)
            if track:
                t = self.tags.get(k)
                if t:
                    _axpy(tag, f, t, p)
        if track:
            # tag accumulated -sum(f * tags); flip so v = rem + combo . inputs
            return v, {k: (-x if p is None else (-x) % p) for k, x in tag.items()}
        return v

    def __contains__(self, v) -> bool:
        v = dict(v)
        return self._leading_reduce(v, None) is None

    def contains(self, v) -> bool:
        return v in self

    def add(self, v: dict, tag=None) -> bool:
        """Insert ``v``; return True when the dimension grew."""
        v = dict(v)
        t = dict(tag) if tag is not None else ({} if self.tags else None)
        c = self._leading_reduce(v, t)
        if c is None:
            return False
        inv = self.field.inv(v[c])
        self.piv[c] = _scaled(v, inv, self.p)
        if t is not None and (t or self.tags):
            self.tags[c] = _scaled(t, inv, self.p)
        return True

    def add_tracked(self, v: dict, tag: dict):
        """Insert ``v`` carrying ``tag``.

        Returns None when ``v`` was independent; otherwise the reduced tag,
        which is a linear relation among the tagged inputs (its combination
        of inputs is zero).
        """
        v = dict(v)
        t = dict(tag)
        c = self._leading_reduce(v, t)
        if c is None:
            return t
        inv = self.field.inv(v[c])
        self.piv[c] = _scaled(v, inv, self.p)
        self.tags[c] = _scaled(t, inv, self.p)
        return None

    def complement_indices(self, n: int) -> list:
        """Standard basis indices spanning a complement in F^n."""
        return [i for i in range(n) if i not in self.piv]

    def issubspace(self, other: "Subspace") -> bool:
        return all(v in other for v in self.piv.values())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.dim == other.dim and self.issubspace(other)

    __hash__ = None


def kernel_from_images(images, field: Field) -> list:
    """Basis of the kernel of the map sending e_j to ``images[j]``.

    Kernel vectors are sparse dicts over the source indices.  Uses tagged
    echelon reduction, so it never forms the full matrix.
    """
    sub = Subspace(field)
    out = []
    one = field.one
    for j, img in enumerate(images):
        rel = sub.add_tracked(img, {j: one})
        if rel is not None:
            out.append(rel)
    return out


class Span:
    """Subspace of F^n with its canonical reduced echelon basis.

    Coordinates of a vector in the span are its entries at the pivot
    columns, so no solve is needed.
    """

    __slots__ = ("field", "n", "rows", "pivots")

    def __init__(self, field: Field, n: int, vectors=()):
        self.field = field
        self.n = n
        m = Matrix(field, len(vectors), n, [dict(v) for v in vectors])
        self.rows = row_space_basis(m) if vectors else []
        self.pivots = [min(r) for r in self.rows]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def matrix(self) -> Matrix:
        """Basis vectors as rows (a dim x n matrix, the inclusion map)."""
        return Matrix(self.field, len(self.rows), self.n, [dict(r) for r in self.rows])

    def element(self, coords) -> dict:
        """Sparse vector with the given coordinates (dense or sparse)."""
        if isinstance(coords, dict):
            items = coords.items()
        else:
            items = enumerate(coords)
        out = {}
        p = self.field.p
        for i, c in items:
            if c:
                _axpy(out, -c if p is None else (-c) % p, self.rows[i], p)
        return out

    def coords(self, v: dict, check=True) -> list:
        z = self.field.zero
        c = [v.get(pc, z) for pc in self.pivots]
        if check and self.element(c) != {k: x for k, x in v.items() if x}:
            raise ValueError("vector does not lie in the span")
        return c

    def sparse_coords(self, v: dict, check=True) -> dict:
        return {i: x for i, x in enumerate(self.coords(v, check)) if x}

    def __contains__(self, v) -> bool:
        c = [v.get(pc, 0) for pc in self.pivots]
        return self.element(c) == {k: x for k, x in v.items() if x}

    def subspace(self) -> Subspace:
        return Subspace(self.field, self.rows)

    def projection_matrix(self) -> Matrix:
        """n x dim matrix reading coordinates; valid only on the span."""
        m = Matrix(self.field, self.n, self.dim)
        one = self.field.one
        for i, pc in enumerate(self.pivots):
            m.rows[pc][i] = one
        return m
