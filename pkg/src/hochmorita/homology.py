"""Free resolutions, Ext and Tor dimensions, grade and depth.

A free right A-module of rank r is F^(r*d) with basis ``g * d + k`` standing
for ``e_g . b_k``.  A resolution is stored through its generators: the
n-th differential sends the free generator e_g of F_n to the vector
``gens[n][g]`` of F_{n-1} (for n = 0, to an element of M).  Writing that
vector blockwise as ``sum_h e_h . a_{g,h}`` gives the algebra elements
used to build Hom and tensor complexes.

Covers are not minimal.  Each kernel is generated by pseudo-random
combinations of its basis (see :func:`hochmorita.modules.choose_generators`),
which in practice gives ranks close to minimal and keeps the resolution
small; homology does not depend on the choice.
"""
from dataclasses import dataclass, field as dc_field

from . import config
from .algebra import Algebra, radical_trace_form
from .errors import ResourceLimitError, DimensionError
from .linalg import Matrix, Subspace, kernel_from_images, _axpy
from .modules import (RightModule, choose_generators, quotient_module, regular_module,
                      GENERATOR_SEED)


# ----------------------------------------------------------------------
# chain complexes


@dataclass
class ChainComplex:
    """Finite complex of vector spaces.

    ``dims[n]`` is the dimension in degree n.  ``diffs[n]`` is the matrix
    (row convention) of the differential leaving degree n: to degree n - 1
    for kind "chain" and n + 1 for kind "cochain".  Missing entries are zero
    maps.
    """
    dims: list
    diffs: dict
    kind: str = "chain"

    def _target(self, n):
        return n - 1 if self.kind == "chain" else n + 1

    def rank(self, n) -> int:
        m = self.diffs.get(n)
        return m.rank() if m is not None else 0

    def homology_dims(self) -> list:
        ranks = {n: self.rank(n) for n in range(len(self.dims))}
        out = []
        for n, dn in enumerate(self.dims):
            incoming = n + 1 if self.kind == "chain" else n - 1
            out.append(dn - ranks.get(n, 0) - ranks.get(incoming, 0))
        return out

    def is_complex(self) -> bool:
        for n, m in self.diffs.items():
            nxt = self.diffs.get(self._target(n))
            if nxt is not None and not (m @ nxt).is_zero():
                return False
        return True


def free_action(a: Algebra, v: dict) -> list:
    """``[v . b_i for i]`` for a vector v of a free module."""
    d = a.dim
    table = a.table
    p = a.field.p
    out = []
    for i in range(d):
        acc = {}
        for idx, x in v.items():
            h, k = divmod(idx, d)
            base = h * d
            for l, c in table[k][i].items():
                key = base + l
                acc[key] = acc.get(key, 0) + x * c
        if p is None:
            out.append({k: y for k, y in acc.items() if y})
        else:
            out.append({k: y % p for k, y in acc.items() if y % p})
    return out


def split_blocks(v: dict, d: int) -> dict:
    """Blocks of a free-module vector: ``{h: sparse algebra element}``."""
    out = {}
    for idx, x in v.items():
        h, k = divmod(idx, d)
        out.setdefault(h, {})[k] = x
    return out


class FreeResolution:
    """Truncated free resolution of a right module, built on demand.

    ``ranks[n]`` is the rank of F_n.  ``gens[n][g]`` is the image of the
    free generator g of F_n (in M for n = 0, in F_{n-1} otherwise).
    """

    def __init__(self, module: RightModule, seed=GENERATOR_SEED, cap=None):
        self.module = module
        self.algebra = module.algebra
        self.seed = seed
        self.cap = config.resolution_cap() if cap is None else cap
        self.ranks = []
        self.gens = []
        self.kernels = []      # kernels[n] = basis of ker(F_n -> F_{n-1})
        self.total_dim = 0

    @property
    def length(self):
        return len(self.ranks) - 1

    def _step(self, target_dim, candidates, act):
        n = len(self.ranks)
        gens, _ = choose_generators(target_dim, candidates, act, self.algebra.field,
                                    self.seed + n)
        r = len(gens)
        d = self.algebra.dim
        self.total_dim += r * d
        if self.total_dim > self.cap:
            raise ResourceLimitError("free resolution", self.total_dim, self.cap,
                                     config.RESOLUTION_CAP_ENV)
        images = []
        for g in gens:
            images.extend(act(g))
        ker = kernel_from_images(images, self.algebra.field)
        self.ranks.append(r)
        self.gens.append(gens)
        self.kernels.append(ker)

    def extend(self, length: int) -> "FreeResolution":
        """Make sure F_0 .. F_length exist."""
        A = self.algebra
        M = self.module
        F = A.field
        while len(self.ranks) <= length:
            if not self.ranks:
                one = F.one
                self._step(M.dim, [{i: one} for i in range(M.dim)],
                           lambda v: [r.apply_sparse(v) for r in M.action])
            else:
                ker = self.kernels[-1]
                self._step(len(ker), ker, lambda v: free_action(A, v))
        return self

    def differential(self, n: int) -> Matrix:
        """Matrix of F_n -> F_{n-1} (or the augmentation F_0 -> M)."""
        A = self.algebra
        d = A.dim
        rows = []
        M = self.module
        for g in self.gens[n]:
            if n == 0:
                rows.extend(r.apply_sparse(g) for r in M.action)
            else:
                rows.extend(free_action(A, g))
        ncols = self.module.dim if n == 0 else self.ranks[n - 1] * d
        return Matrix(A.field, self.ranks[n] * d, ncols, rows)

    def coefficient_blocks(self, n: int) -> list:
        """For n >= 1: ``blocks[g] = {h: a_{g,h}}`` with d(e_g) = sum e_h a_{g,h}."""
        d = self.algebra.dim
        return [split_blocks(g, d) for g in self.gens[n]]

    def is_exact(self) -> bool:
        """Check d_{n} d_{n-1} = 0 and that each image equals the next kernel."""
        A = self.algebra
        F = A.field
        d = A.dim
        for n in range(1, len(self.ranks)):
            dn = self.differential(n)
            prev = self.differential(n - 1)
            if not (dn @ prev).is_zero():
                return False
            image = Subspace(F, dn.rows)
            if image.dim != len(self.kernels[n - 1]):
                return False
        eps = self.differential(0)
        if self.ranks and Subspace(F, eps.rows).dim != self.module.dim:
            return False
        return True


def free_resolution(a: Algebra, m: RightModule, length: int, seed=GENERATOR_SEED,
                    cap=None) -> FreeResolution:
    if m.algebra is not a:
        raise DimensionError("module is not over the given algebra")
    res = FreeResolution(m, seed, cap)
    return res.extend(length)


# ----------------------------------------------------------------------
# Ext and Tor


def hom_cochain_differential(res: FreeResolution, n: int, target: RightModule) -> Matrix:
    """Hom_A(F_n, N) -> Hom_A(F_{n+1}, N) with Hom_A(F_n, N) = N^{r_n}.

    A cochain is the tuple of images of the free generators; index
    ``h * dim N + u``.
    """
    F = target.field
    nN = target.dim
    rn, rn1 = res.ranks[n], res.ranks[n + 1]
    blocks = res.coefficient_blocks(n + 1)
    rows = [{} for _ in range(rn * nN)]
    p = F.p
    for g, bl in enumerate(blocks):
        for h, a_gh in bl.items():
            act = target.action_matrix(a_gh)
            for u, row in enumerate(act.rows):
                dest = rows[h * nN + u]
                for w, x in row.items():
                    key = g * nN + w
                    y = dest.get(key, 0) + x
                    if p is not None:
                        y %= p
                    if y:
                        dest[key] = y
                    else:
                        dest.pop(key, None)
    return Matrix(F, rn * nN, rn1 * nN, rows)


def _hom_complex_dims(res: FreeResolution, target: RightModule, n_max: int, stop_early=False):
    dims = []
    prev_rank = 0
    for n in range(n_max + 1):
        res.extend(n + 1)
        cn = res.ranks[n] * target.dim
        delta = hom_cochain_differential(res, n, target)
        r = delta.rank()
        dims.append(cn - r - prev_rank)
        prev_rank = r
        if stop_early and dims[-1]:
            break
    return dims


def ext_dims(a: Algebra, m: RightModule, n: RightModule, n_max: int,
             resolution: FreeResolution = None) -> list:
    """``[dim Ext^i_A(M, N) for i in 0..n_max]``."""
    if m.algebra is not a or n.algebra is not a:
        raise DimensionError("modules are not over the given algebra")
    if n_max < 0:
        return []
    if m.dim == 0:
        return [0] * (n_max + 1)
    res = resolution or FreeResolution(m)
    dims = _hom_complex_dims(res, n, n_max)
    if config.debug() and resolution is None:
        # a differently seeded cover must give the same dimensions
        other = _hom_complex_dims(FreeResolution(m, GENERATOR_SEED + 7919), n, n_max)
        if other != dims:
            raise AssertionError(f"Ext depends on the resolution: {dims} vs {other}")
    return dims


def tensor_chain_differential(res: FreeResolution, n: int, left: RightModule) -> Matrix:
    """F_n (x)_A N -> F_{n-1} (x)_A N for n >= 1, with F_n (x) N = N^{r_n}.

    ``left`` is the left module N given as a right module over A^op, so
    ``a . w = w @ left.action[a]``.
    """
    F = left.field
    nN = left.dim
    rn, rp = res.ranks[n], res.ranks[n - 1]
    blocks = res.coefficient_blocks(n)
    rows = [{} for _ in range(rn * nN)]
    p = F.p
    for g, bl in enumerate(blocks):
        for h, a_gh in bl.items():
            act = left.action_matrix(a_gh)
            for u, row in enumerate(act.rows):
                dest = rows[g * nN + u]
                for w, x in row.items():
                    key = h * nN + w
                    y = dest.get(key, 0) + x
                    if p is not None:
                        y %= p
                    if y:
                        dest[key] = y
                    else:
                        dest.pop(key, None)
    return Matrix(F, rn * nN, rp * nN, rows)


def tor_dims(a: Algebra, m: RightModule, left: RightModule, n_max: int,
             resolution: FreeResolution = None) -> list:
    """``[dim Tor_i^A(M, N) for i in 0..n_max]``; N is a left module over A^op."""
    if m.algebra is not a:
        raise DimensionError("module is not over the given algebra")
    if left.algebra.dim != a.dim:
        raise DimensionError("left module has the wrong algebra")
    if n_max < 0:
        return []
    if m.dim == 0:
        return [0] * (n_max + 1)
    res = resolution or FreeResolution(m)
    res.extend(n_max + 1)
    ranks = [0]
    for n in range(1, n_max + 2):
        ranks.append(tensor_chain_differential(res, n, left).rank())
    return [res.ranks[n] * left.dim - ranks[n] - ranks[n + 1] for n in range(n_max + 1)]


# ----------------------------------------------------------------------
# grade and depth


@dataclass(frozen=True)
class GradeBound:
    """Grade found by scanning Ext up to a cutoff.

    ``value`` is the exact grade when some Ext^i with i <= cutoff is
    nonzero, otherwise None, meaning "greater than cutoff".
    """
    value: object
    cutoff: int
    ext_dims: tuple = ()

    @property
    def exact(self) -> bool:
        return self.value is not None

    @property
    def lower_bound(self) -> int:
        return self.value if self.value is not None else self.cutoff + 1

    def at_least(self, k: int) -> bool:
        """True when the grade is certainly >= k."""
        return self.lower_bound >= k

    def below(self, k: int) -> bool:
        """True when the grade is certainly < k."""
        return self.value is not None and self.value < k

    def agrees(self, other: "GradeBound") -> bool:
        """Equal as far as both cutoffs can tell."""
        if self.exact and other.exact:
            return self.value == other.value
        if self.exact:
            return self.value > other.cutoff
        if other.exact:
            return other.value > self.cutoff
        return True

    def __str__(self):
        return str(self.value) if self.exact else f"> {self.cutoff}"

    def to_json(self):
        return self.value if self.exact else f"> {self.cutoff}"


def grade_of(a: Algebra, m: RightModule, cutoff: int, target: RightModule = None) -> GradeBound:
    """Least i with Ext^i_A(M, A) != 0, scanning i = 0..cutoff.

    ``target`` replaces A_A when given (used for grades against other
    modules).  The zero module has infinite grade.
    """
    if m.dim == 0:
        return GradeBound(None, cutoff, tuple([0] * (cutoff + 1)))
    target = target or regular_module(a)
    res = FreeResolution(m)
    dims = _hom_complex_dims(res, target, cutoff, stop_early=True)
    value = next((i for i, x in enumerate(dims) if x), None)
    return GradeBound(value, cutoff, tuple(dims))


def quotient_by_ideal(a: Algebra, ideal_vectors) -> RightModule:
    """A/I as a right A-module."""
    return quotient_module(regular_module(a), ideal_vectors).module


def depth_on_ideal(a: Algebra, ideal_vectors, cutoff: int) -> GradeBound:
    """grade_A(A/I), the depth of the ideal I on A.  I = A gives "> cutoff"."""
    return grade_of(a, quotient_by_ideal(a, ideal_vectors), cutoff)


def global_dimension(a: Algebra, cutoff: int):
    """Global dimension via Ext^n(A/J, A/J); None when undetermined.

    Only characteristic zero is handled, where the trace form gives the
    Jacobson radical J.  The result is the least n with Ext^{n+1} = 0,
    because A/J contains every simple module as a summand.  Returns a
    :class:`GradeBound`-like pair ``(value or None, determined)``.
    """
    if a.field.p is not None:
        return None, False
    J = radical_trace_form(a)
    top = quotient_module(regular_module(a), J.rows).module
    dims = ext_dims(a, top, top, cutoff + 1)
    for n in range(1, cutoff + 2):
        if dims[n] == 0:
            return n - 1, True
    return None, False
