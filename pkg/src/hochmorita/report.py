"""Machine-readable reports.

Every assertion a command makes is recorded under a name from ``REGISTRY``.
The names are frozen so that downstream tooling can follow a check across
versions; new checks get new names rather than renaming old ones.
"""
import json
from dataclasses import dataclass, field as dc_field

PASS, FAIL, INAPPLICABLE, INCONCLUSIVE = "pass", "fail", "inapplicable", "inconclusive"
STATUSES = (PASS, FAIL, INAPPLICABLE, INCONCLUSIVE)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

REGISTRY = {
    # structure
    "algebra-axioms": "structure constants have a two-sided unit and are associative",
    "module-axioms": "action matrices define a right module",
    "pierce-closure": "products of Pierce components land in the component the idempotents predict",
    # contexts
    "fundamental-sequence-exact": "0 -> Omega -> Ce (x)_A eC -> C -> C/CeC -> 0 is exact",
    "omega-killed-by-e": "e annihilates Omega on both sides",
    "omega-is-tor2": "dim Omega equals dim Tor_2^C(C-bar, C-bar)",
    "alpha-bijective-iff-grade-two": "C -> End_A(Ce) is bijective exactly when grade_C(C-bar) >= 2",
    "context-classification": "equivalent characterisations of the Morita, Auslander and Wedderburn flags agree",
    "auslander-identification": "the corners of End_A(M + A) are A and End_A(M)",
    # Ext and grades
    "stable-end-grade": "grade of the stable End equals 1 + first nonvanishing Ext^i_A(M, M), with matching top dimensions",
    "projectivity-defect": "stable End vanishes iff M is projective",
    "gldim-end-forces-projective": "Ext-vanishing below gldim End_A(M) forces M projective",
    # Hochschild cohomology
    "hh-methods-agree": "bar complex and enveloping-algebra Ext give the same HH dimensions",
    "hh-reference-values": "HH dimensions match independently derived reference values",
    "hh-matrix-invariance": "HH of M_2(A) equals HH of A and chi is bijective",
    "chi-bijective-below-grade": "chi^j is bijective for j <= g - 2 and injective for j = g - 1",
    "relative-hh-vanishes": "HH^i(C/A) = 0 for i < g",
    "relative-hh-routes-agree": "relative HH from the long exact sequence equals the direct subcomplex",
    "chi-descends": "corner compression maps cocycles to cocycles and coboundaries to coboundaries",
    "chi-cup-compatible": "chi(phi u psi) - chi(phi) u chi(psi) is a coboundary on sampled cocycles",
    "relative-bar-homology": "relative bar homology equals (C-bar, Omega, Tor^A(M, N))",
    "rigidity-hh2-vanishes": "Ext^1_A(M, M) = 0 and HH^2(A) = 0 give HH^2(End_A(M + A)) = 0",
    # group actions
    "skew-group-structure": "SG is an algebra containing S, with f = sum of g idempotent up to |G|",
    "skew-context": "End_SG(fS) = R and the defect of the context is SG/SfS",
    "infinitesimally-outer": "twisted commutants vanish, cross-checked against the centralizer of S",
    "skew-hh-degeneration": "dim HH^i(SG, SG) = dim HH^i(S, SG)^G",
    "different-annihilates-defect": "the Noether different lies in the annihilator of SG/SfS",
    "defect-grade-bounds-depth": "grade_SG(SG/SfS) >= depth of the different on S",
    "twisted-ext-vanishes": "HH^i(S, S_g) = 0 below the depth for g != e",
    "invariant-hh-matches": "HH(S)^G agrees with HH(R) below depth - 1",
    "invariant-morita-equivalence": "SG/SfS = 0, so R and SG are Morita equivalent with equal HH",
}


def _jsonable(x):
    """Recursively convert payload values to plain JSON types."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    # exact scalars (mpq, field elements) print exactly
    return str(x)


@dataclass
class Check:
    name: str
    subject: str
    status: str
    payload: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.name not in REGISTRY:
            raise KeyError(f"unregistered check name {self.name!r}")
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    def to_json(self) -> dict:
        return {"name": self.name, "subject": self.subject, "status": self.status,
                "payload": _jsonable(self.payload)}


def status_of(flag) -> str:
    """True -> pass, False -> fail, None -> inapplicable."""
    if flag is None:
        return INAPPLICABLE
    return PASS if flag else FAIL


@dataclass
class Report:
    command: str
    job: dict = dc_field(default_factory=dict)
    checks: list = dc_field(default_factory=list)
    results: dict = dc_field(default_factory=dict)
    wall_time: float = 0.0

    def add(self, name: str, subject: str, flag, **payload) -> Check:
        status = flag if isinstance(flag, str) else status_of(flag)
        c = Check(name, subject, status, payload)
        self.checks.append(c)
        return c

    def extend(self, checks):
        self.checks.extend(checks)

    def counts(self) -> dict:
        out = {s: 0 for s in STATUSES}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def failed(self) -> bool:
        return any(c.status == FAIL for c in self.checks)

    @property
    def exit_code(self) -> int:
        return EXIT_FAILED if self.failed else EXIT_OK

    def sorted_checks(self) -> list:
        return sorted(self.checks, key=lambda c: (c.name, c.subject))

    def to_dict(self, with_time=True) -> dict:
        out = {
            "command": self.command,
            "job": _jsonable(self.job),
            "results": _jsonable(self.results),
            "checks": [c.to_json() for c in self.sorted_checks()],
            "summary": self.counts(),
        }
        if with_time:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, with_time=True) -> str:
        return json.dumps(self.to_dict(with_time), indent=2, sort_keys=True) + "\n"


def strip_wall_time(text: str) -> str:
    """A report's JSON with the wall-time field removed, for comparisons."""
    doc = json.loads(text)
    doc.pop("wall_time", None)
    return json.dumps(doc, indent=2, sort_keys=True)
