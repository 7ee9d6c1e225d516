"""JSON documents for algebras, modules, idempotents, group actions and jobs.

Rationals are written as strings ("3/4", "-2"); F_p residues as integers in
[0, p).  Parsing validates the object and reports the location of the
first problem.  ``emit(parse(x))`` is canonical, so parse -> emit -> parse
is stable.
"""
import json
from dataclasses import dataclass, field as dc_field
from importlib import resources

from .algebra import Algebra, validate_algebra, is_idempotent
from .errors import AlgebraError, DimensionError
from .linalg import Field, Matrix, QQ

KINDS = ("algebra", "module", "idempotent", "group-action", "context-job")


class SpecError(ValueError):
    """A JSON document is malformed or describes an invalid object."""

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


@dataclass
class SpecDocument:
    kind: str
    data: dict                          # canonical JSON-ready payload
    objects: dict = dc_field(default_factory=dict, compare=False)

    def emit(self) -> bytes:
        return dump_json(self.data)


def dump_json(obj) -> bytes:
    return (json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode()


# ----------------------------------------------------------------------
# fields and scalars


def field_to_spec(F: Field):
    return "Q" if F.p is None else {"Fp": F.p}


def field_from_spec(spec, where="field") -> Field:
    if spec in ("Q", "QQ"):
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        try:
            return Field(spec["Fp"])
        except (TypeError, ValueError) as exc:
            raise SpecError(where, str(exc)) from None
    raise SpecError(where, f"expected \"Q\" or {{\"Fp\": prime}}, got {spec!r}")


def scalar(F: Field, x, where):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SpecError(where, f"scalar must be an integer or a \"num/den\" string, got {x!r}")
    try:
        return F(x)
    except ZeroDivisionError as exc:
        raise SpecError(where, str(exc)) from None
    except (ValueError, TypeError):
        raise SpecError(where, f"cannot read {x!r} as a scalar") from None


def _index(x, n, where):
    if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
        raise SpecError(where, f"index {x!r} out of range 0..{n - 1}")
    return x


def _sparse_from(F, entries, n, where) -> dict:
    """``[[k, value], ...]`` -> sparse dict."""
    out = {}
    for t, e in enumerate(entries):
        if not isinstance(e, list) or len(e) != 2:
            raise SpecError(f"{where}[{t}]", "expected [index, value]")
        k = _index(e[0], n, f"{where}[{t}][0]")
        out[k] = F.normalize(out.get(k, 0) + scalar(F, e[1], f"{where}[{t}][1]"))
    return {k: v for k, v in out.items() if v}


def _sparse_to(F, v: dict) -> list:
    return [[k, F.format(v[k])] for k in sorted(v) if v[k]]


def _dense_from(F, values, n, where) -> list:
    if not isinstance(values, list) or len(values) != n:
        raise SpecError(where, f"expected a list of {n} scalars")
    return [scalar(F, x, f"{where}[{i}]") for i, x in enumerate(values)]


def _matrix_to(F, m: Matrix) -> list:
    """Nonzero entries as ``[row, col, value]`` triples."""
    return [[r, c, F.format(x)] for r, row in enumerate(m.rows) for c, x in sorted(row.items())
            if x]


def _matrix_from(F, entries, n, where) -> Matrix:
    rows = [{} for _ in range(n)]
    if not isinstance(entries, list):
        raise SpecError(where, "expected a list of [row, col, value] triples")
    for t, e in enumerate(entries):
        if not isinstance(e, list) or len(e) != 3:
            raise SpecError(f"{where}[{t}]", "expected [row, col, value]")
        r = _index(e[0], n, f"{where}[{t}][0]")
        c = _index(e[1], n, f"{where}[{t}][1]")
        rows[r][c] = F.normalize(rows[r].get(c, 0) + scalar(F, e[2], f"{where}[{t}][2]"))
    return Matrix(F, n, n, [{c: x for c, x in r.items() if x} for r in rows])


# ----------------------------------------------------------------------
# algebras


def algebra_to_dict(a: Algebra) -> dict:
    F = a.field
    return {
        "kind": "algebra",
        "field": field_to_spec(F),
        "dim": a.dim,
        "name": a.name,
        "labels": list(a.labels),
        "structure": [[i, j, k, F.format(c)] for i, j, k, c in a.entries()],
        "unit": [F.format(u) for u in a.unit],
    }


def algebra_from_dict(doc: dict, where="algebra") -> Algebra:
    _expect_kind(doc, "algebra", where)
    F = field_from_spec(doc.get("field", "Q"), f"{where}.field")
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise SpecError(f"{where}.dim", "expected a nonnegative integer")
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != dim):
        raise SpecError(f"{where}.labels", f"expected {dim} labels")
    structure = doc.get("structure", [])
    if not isinstance(structure, list):
        raise SpecError(f"{where}.structure", "expected a list of [i, j, k, value] triples")
    table = [[{} for _ in range(dim)] for _ in range(dim)]
    for t, e in enumerate(structure):
        loc = f"{where}.structure[{t}]"
        if not isinstance(e, list) or len(e) != 4:
            raise SpecError(loc, "expected [i, j, k, value]")
        i, j, k = (_index(e[s], dim, f"{loc}[{s}]") for s in range(3))
        cell = table[i][j]
        cell[k] = F.normalize(cell.get(k, 0) + scalar(F, e[3], f"{loc}[3]"))
        if not cell[k]:
            del cell[k]
    unit = _dense_from(F, doc.get("unit"), dim, f"{where}.unit")
    a = Algebra(F, dim, table, unit, labels, doc.get("name"))
    rep = validate_algebra(a, strict=False)
    if not rep.valid:
        kind, *idx = rep.failures[0]
        if kind == "unit":
            raise SpecError(f"{where}.unit", f"not a two-sided unit on basis element {idx[0]}")
        raise SpecError(f"{where}.structure",
                        f"associativity fails on basis triple ({idx[0]}, {idx[1]}, {idx[2]})")
    return a


def _expect_kind(doc, kind, where):
    if not isinstance(doc, dict):
        raise SpecError(where, "expected a JSON object")
    if doc.get("kind", kind) != kind:
        raise SpecError(f"{where}.kind", f"expected {kind!r}, got {doc.get('kind')!r}")


# ----------------------------------------------------------------------
# modules, idempotents, actions


def module_to_dict(m, algebra_ref=None) -> dict:
    F = m.field
    return {
        "kind": "module",
        "side": "right",
        "dim": m.dim,
        "name": m.name,
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_dict(m.algebra),
        "action": [_matrix_to(F, mat) for mat in m.action],
    }


def module_from_dict(doc: dict, algebra: Algebra = None, where="module"):
    from .modules import RightModule
    _expect_kind(doc, "module", where)
    if doc.get("side", "right") != "right":
        raise SpecError(f"{where}.side", "only right modules are supported; "
                        "give a left module as a right module over the opposite algebra")
    if algebra is None:
        if not isinstance(doc.get("algebra"), dict):
            raise SpecError(f"{where}.algebra", "missing algebra")
        algebra = algebra_from_dict(doc["algebra"], f"{where}.algebra")
    F = algebra.field
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise SpecError(f"{where}.dim", "expected a nonnegative integer")
    action = doc.get("action")
    if not isinstance(action, list) or len(action) != algebra.dim:
        raise SpecError(f"{where}.action", f"expected {algebra.dim} action matrices")
    mats = [_matrix_from(F, e, dim, f"{where}.action[{i}]") for i, e in enumerate(action)]
    m = RightModule(algebra, dim, mats, doc.get("name"))
    errs = m.check()
    if errs:
        raise SpecError(f"{where}.action", str(errs[0]))
    return m


def idempotent_to_dict(a: Algebra, e: dict) -> dict:
    F = a.field
    return {"kind": "idempotent", "vector": _sparse_to(F, e)}


def idempotent_from_dict(doc: dict, algebra: Algebra, where="idempotent") -> dict:
    _expect_kind(doc, "idempotent", where)
    F = algebra.field
    if "vector" not in doc:
        raise SpecError(f"{where}.vector", "missing")
    vec = doc["vector"]
    if isinstance(vec, list) and vec and not isinstance(vec[0], list):
        e = {i: x for i, x in enumerate(_dense_from(F, vec, algebra.dim, f"{where}.vector")) if x}
    else:
        e = _sparse_from(F, vec, algebra.dim, f"{where}.vector")
    if not is_idempotent(algebra, e):
        raise SpecError(f"{where}.vector", "element is not idempotent")
    return e


def action_to_dict(action) -> dict:
    """Group table plus one matrix A_g per element; column j of A_g is g(b_j)."""
    F = action.field
    G = action.group
    mats = []
    for g in range(G.order):
        cols = action.images[g]
        mats.append([[i, j, F.format(x)] for j, col in enumerate(cols)
                     for i, x in sorted(col.items()) if x])
    mats = [sorted(m) for m in mats]
    return {
        "kind": "group-action",
        "name": action.name,
        "group": {"table": G.table, "identity": G.identity, "labels": G.labels,
                  "name": G.name},
        "matrices": mats,
    }


def action_from_dict(doc: dict, algebra: Algebra, where="action"):
    from .groups import FiniteGroup, GroupAction
    _expect_kind(doc, "group-action", where)
    g = doc.get("group")
    if not isinstance(g, dict) or not isinstance(g.get("table"), list):
        raise SpecError(f"{where}.group.table", "missing group table")
    table = g["table"]
    n = len(table)
    for r, row in enumerate(table):
        if not isinstance(row, list) or len(row) != n:
            raise SpecError(f"{where}.group.table[{r}]", f"expected {n} entries")
        for c, x in enumerate(row):
            _index(x, n, f"{where}.group.table[{r}][{c}]")
    try:
        G = FiniteGroup(table, g.get("identity", 0), g.get("labels"), g.get("name"))
    except AlgebraError as exc:
        raise SpecError(f"{where}.group", str(exc)) from None
    errs = G.check()
    if errs:
        raise SpecError(f"{where}.group", errs[0])
    mats = doc.get("matrices")
    if not isinstance(mats, list) or len(mats) != n:
        raise SpecError(f"{where}.matrices", f"expected {n} matrices")
    F = algebra.field
    images = []
    for t, entries in enumerate(mats):
        m = _matrix_from(F, entries, algebra.dim, f"{where}.matrices[{t}]")
        # column convention: entry (i, j) is the coefficient of b_i in g(b_j)
        cols = [{} for _ in range(algebra.dim)]
        for i, row in enumerate(m.rows):
            for j, x in row.items():
                cols[j][i] = x
        images.append(cols)
    try:
        act = GroupAction(G, algebra, images, doc.get("name"))
    except DimensionError as exc:
        raise SpecError(f"{where}.matrices", str(exc)) from None
    errs = act.check()
    if errs:
        raise SpecError(f"{where}.matrices", errs[0])
    return act


# ----------------------------------------------------------------------
# whole documents


def parse_spec(raw) -> SpecDocument:
    """Parse and validate a JSON document (bytes, str or an already-loaded dict)."""
    if isinstance(raw, (bytes, bytearray)):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SpecError("document", f"not UTF-8: {exc}") from None
    if isinstance(raw, str):
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SpecError("document", f"malformed JSON: {exc}") from None
    else:
        doc = raw
    if not isinstance(doc, dict):
        raise SpecError("document", "expected a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise SpecError("kind", f"expected one of {', '.join(KINDS)}, got {kind!r}")
    if kind == "algebra":
        a = algebra_from_dict(doc)
        return SpecDocument(kind, algebra_to_dict(a), {"algebra": a})
    if kind == "module":
        m = module_from_dict(doc)
        return SpecDocument(kind, module_to_dict(m), {"module": m, "algebra": m.algebra})
    if kind in ("idempotent", "group-action"):
        if not isinstance(doc.get("algebra"), dict):
            raise SpecError("algebra", f"a standalone {kind} document needs its algebra")
        a = algebra_from_dict(doc["algebra"])
        if kind == "idempotent":
            e = idempotent_from_dict(doc, a)
            data = idempotent_to_dict(a, e)
            data["algebra"] = algebra_to_dict(a)
            return SpecDocument(kind, data, {"algebra": a, "idempotent": e})
        act = action_from_dict(doc, a)
        data = action_to_dict(act)
        data["algebra"] = algebra_to_dict(a)
        return SpecDocument(kind, data, {"algebra": a, "action": act})
    return _parse_job(doc)


def _parse_job(doc) -> SpecDocument:
    if not isinstance(doc.get("algebra"), dict):
        raise SpecError("algebra", "a context job needs an algebra")
    a = algebra_from_dict(doc["algebra"])
    objs = {"algebra": a}
    data = {"kind": "context-job", "algebra": algebra_to_dict(a)}
    if "idempotent" in doc:
        e = idempotent_from_dict(doc["idempotent"], a)
        objs["idempotent"] = e
        data["idempotent"] = idempotent_to_dict(a, e)
    if "module" in doc:
        m = module_from_dict(doc["module"], a)
        objs["module"] = m
        mdoc = module_to_dict(m, algebra_ref="algebra")
        data["module"] = mdoc
    for key, default in (("cutoff", 5), ("max_degree", 3)):
        v = doc.get(key, default)
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise SpecError(key, "expected a nonnegative integer")
        data[key] = v
    caps = doc.get("caps", {})
    if not isinstance(caps, dict):
        raise SpecError("caps", "expected an object")
    data["caps"] = {}
    for key in ("bar", "resolution"):
        if key in caps:
            v = caps[key]
            if isinstance(v, bool) or not isinstance(v, int) or v <= 0:
                raise SpecError(f"caps.{key}", "expected a positive integer")
            data["caps"][key] = v
    return SpecDocument("context-job", data, objs)


def load_spec(path) -> SpecDocument:
    with open(path, "rb") as fh:
        return parse_spec(fh.read())


def load_algebra(path) -> Algebra:
    doc = load_spec(path)
    if "algebra" not in doc.objects:
        raise SpecError(str(path), "document does not contain an algebra")
    return doc.objects["algebra"]


# ----------------------------------------------------------------------
# bundled fixtures


def fixture_names() -> list:
    base = resources.files("hochmorita") / "data"
    return sorted(p.name[:-5] for p in base.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> SpecDocument:
    base = resources.files("hochmorita") / "data"
    return parse_spec((base / f"{name}.json").read_bytes())
