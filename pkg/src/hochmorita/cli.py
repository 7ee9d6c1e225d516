"""Command-line interface; every subcommand prints a JSON report.

Exit status: 0 when no check failed, 1 when some check failed, 2 for usage
or parse errors, 3 when a resource cap stopped the computation.
"""
import json
import os
import sys
import time

import click

from . import io
from .errors import ResourceLimitError
from .report import EXIT_RESOURCE, EXIT_USAGE, REGISTRY, Report


class InputError(click.ClickException):
    exit_code = EXIT_USAGE


def _read(ref: str, what: str) -> dict:
    """Raw JSON from a file path or a bundled fixture name."""
    if os.path.exists(ref):
        with open(ref, "rb") as fh:
            raw = fh.read()
    elif ref in io.fixture_names():
        from importlib import resources
        raw = (resources.files("hochmorita") / "data" / f"{ref}.json").read_bytes()
    else:
        raise InputError(f"{what}: no such file or bundled fixture: {ref}")
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{what}: malformed JSON: {exc}")
    if not isinstance(doc, dict):
        raise InputError(f"{what}: expected a JSON object")
    return doc


def _spec(fn, *args):
    try:
        return fn(*args)
    except io.SpecError as exc:
        raise InputError(str(exc))


def _algebra(algebra_ref, *others):
    """The algebra from --algebra, else the one embedded in another document."""
    if algebra_ref:
        doc = _read(algebra_ref, "--algebra")
        if doc.get("kind") in ("module", "idempotent", "group-action", "context-job"):
            doc = doc.get("algebra")
        return _spec(io.algebra_from_dict, doc, "algebra")
    for ref, what in others:
        if ref:
            doc = _read(ref, what)
            if isinstance(doc.get("algebra"), dict):
                return _spec(io.algebra_from_dict, doc["algebra"], f"{what}.algebra")
    raise InputError("no algebra given (use --algebra)")


def _idempotent(ref, A):
    return _spec(io.idempotent_from_dict, _read(ref, "--idempotent"), A, "idempotent")


def _module(ref, A, what="--module"):
    return _spec(io.module_from_dict, _read(ref, what), A, "module")


def _action(ref, A):
    return _spec(io.action_from_dict, _read(ref, "--action"), A, "action")


def _emit(report: Report, t0: float, output, with_time: bool):
    report.wall_time = time.perf_counter() - t0
    text = report.to_json(with_time)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    sys.exit(report.exit_code)


def _run(body):
    """Run a command body, mapping resource caps to exit status 3."""
    try:
        return body()
    except ResourceLimitError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_RESOURCE)


def _common(f):
    f = click.option("--output", "-o", type=click.Path(dir_okay=False),
                     help="Write the report here instead of stdout.")(f)
    f = click.option("--no-time", is_flag=True, help="Omit the wall-time field.")(f)
    return f


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Morita contexts, grades and Hochschild cohomology of finite-dimensional algebras."""


@main.command()
@click.argument("documents", nargs=-1, required=True)
@_common
def validate(documents, output, no_time):
    """Parse and validate JSON documents (files or fixture names)."""
    t0 = time.perf_counter()
    report = Report("validate", job={"documents": list(documents)})
    for ref in documents:
        doc = _read(ref, ref)
        try:
            parsed = io.parse_spec(doc)
        except io.SpecError as exc:
            name = "module-axioms" if doc.get("kind") == "module" else "algebra-axioms"
            report.add(name, ref, False, error=str(exc))
            continue
        name = "module-axioms" if parsed.kind == "module" else "algebra-axioms"
        a = parsed.objects.get("algebra")
        report.add(name, ref, True, kind=parsed.kind, algebra_dim=a.dim if a else None)
    _emit(report, t0, output, not no_time)


@main.command()
@click.option("--algebra", "algebra_ref")
@click.option("--idempotent", "idem_ref", required=True)
@_common
def pierce(algebra_ref, idem_ref, output, no_time):
    """Pierce decomposition of C along e and its multiplication pattern."""
    from .algebra import pierce_closure_checks
    from .morita import MoritaContext
    t0 = time.perf_counter()
    C = _algebra(algebra_ref, (idem_ref, "--idempotent"))
    ctx = MoritaContext(C, _idempotent(idem_ref, C))
    report = Report("pierce", job={"algebra": C.name, "dim": C.dim})
    checks = pierce_closure_checks(ctx.pierce)
    report.results = {"dims": dict(ctx.pierce.dims())}
    report.add("pierce-closure", C.name or "C", all(checks.values()), checks=checks)
    _emit(report, t0, output, not no_time)


def _context_checks(report, ctx, cutoff, subject):
    from .morita import alpha_map_check, classify_context, fundamental_sequence
    from .homology import grade_of
    cr = classify_context(ctx, cutoff)
    fs = fundamental_sequence(ctx)
    alpha = alpha_map_check(ctx)
    report.results = {
        "dims": cr.dims, "defect_dim": cr.defect_dim, "defect_prime_dim": cr.defect_prime_dim,
        "grade": cr.grade, "left_grade": cr.left_grade, "grade_prime": cr.grade_prime,
        "flags": cr.flags, "omega_dim": fs.omega_dim,
    }
    for c in cr.checks:
        report.add("context-classification", f"{subject}: {c.name}", c.passed, **c.data)
    ch = fs.checks
    report.add("fundamental-sequence-exact", subject,
               all(v for k, v in ch.items() if k not in
                   ("e_kills_omega_left", "e_kills_omega_right", "omega_is_tor2")))
    report.add("omega-killed-by-e", subject,
               ch["e_kills_omega_left"] and ch["e_kills_omega_right"])
    report.add("omega-is-tor2", subject, ch["omega_is_tor2"], tor2_dim=fs.tor2_dim)
    grade = grade_of(ctx.C, ctx.defect_right, cutoff)
    report.add("alpha-bijective-iff-grade-two", subject,
               alpha.bijective == grade.at_least(2), alpha_bijective=alpha.bijective)


@main.command()
@click.option("--algebra", "algebra_ref")
@click.option("--idempotent", "idem_ref", required=True)
@click.option("--cutoff", default=5, show_default=True, type=click.IntRange(0))
@_common
def classify(algebra_ref, idem_ref, cutoff, output, no_time):
    """Defects, grades and the Morita/Auslander/Wedderburn flags of (C, e)."""
    from .morita import MoritaContext

    def body():
        t0 = time.perf_counter()
        C = _algebra(algebra_ref, (idem_ref, "--idempotent"))
        ctx = MoritaContext(C, _idempotent(idem_ref, C))
        report = Report("classify", job={"algebra": C.name, "dim": C.dim, "cutoff": cutoff})
        _context_checks(report, ctx, cutoff, C.name or "C")
        _emit(report, t0, output, not no_time)
    _run(body)


@main.command()
@click.option("--algebra", "algebra_ref")
@click.option("--module", "module_ref", required=True)
@click.option("--target", "target_ref", help="Second argument of Ext (default: the algebra).")
@click.option("--max-degree", default=3, show_default=True, type=click.IntRange(0))
@_common
def ext(algebra_ref, module_ref, target_ref, max_degree, output, no_time):
    """dim Ext^i_A(M, N) for i up to the maximum degree."""
    from .homology import ext_dims
    from .modules import regular_module

    def body():
        t0 = time.perf_counter()
        A = _algebra(algebra_ref, (module_ref, "--module"))
        M = _module(module_ref, A)
        N = _module(target_ref, A, "--target") if target_ref else regular_module(A)
        report = Report("ext", job={"algebra": A.name, "module": M.name,
                                    "target": N.name, "max_degree": max_degree})
        report.results = {"ext_dims": ext_dims(A, M, N, max_degree)}
        _emit(report, t0, output, not no_time)
    _run(body)


@main.command()
@click.option("--algebra", "algebra_ref")
@click.option("--module", "module_ref", required=True)
@click.option("--cutoff", default=5, show_default=True, type=click.IntRange(0))
@_common
def grade(algebra_ref, module_ref, cutoff, output, no_time):
    """Grade of M; for a generator also the stable-End comparison."""
    from .homology import grade_of
    from .modules import is_generator
    from .morita import projectivity_defect_check, verify_stable_end_grade

    def body():
        t0 = time.perf_counter()
        A = _algebra(algebra_ref, (module_ref, "--module"))
        M = _module(module_ref, A)
        subject = M.name or "M"
        report = Report("grade", job={"algebra": A.name, "module": M.name, "cutoff": cutoff})
        g = grade_of(A, M, cutoff)
        report.results = {"grade": g, "ext_dims": list(g.ext_dims)}
        pd = projectivity_defect_check(A, M)
        report.add("projectivity-defect", subject, pd["ok"], **pd)
        if is_generator(A, M):
            r = verify_stable_end_grade(A, M, cutoff)
            report.results["stable_end"] = {"grade": r.grade_end, "ext_MM": r.ext_MM,
                                            "stable_dim": r.stable_dim}
            report.add("stable-end-grade", subject, r.agree, grade_end=r.grade_end,
                       grade_ext=r.grade_ext, top_end_ext=r.top_end_ext,
                       top_MM_ext=r.top_MM_ext)
        else:
            report.add("stable-end-grade", subject, None, reason="module is not a generator")
        _emit(report, t0, output, not no_time)
    _run(body)


@main.command()
@click.option("--algebra", "algebra_ref", required=True)
@click.option("--max-degree", default=3, show_default=True, type=click.IntRange(0))
@click.option("--method", type=click.Choice(["bar", "ext", "both"]), default="both",
              show_default=True)
@click.option("--bar-cap", type=click.IntRange(1), help="Override the bar-complex size cap.")
@_common
def hh(algebra_ref, max_degree, method, bar_cap, output, no_time):
    """Hochschild cohomology dimensions HH^i(A, A)."""
    from .hochschild import hh_via_bar, hh_via_ext

    def body():
        t0 = time.perf_counter()
        A = _algebra(algebra_ref)
        report = Report("hh", job={"algebra": A.name, "dim": A.dim,
                                   "max_degree": max_degree, "method": method})
        res = {}
        if method in ("bar", "both"):
            res["bar"] = hh_via_bar(A, None, max_degree, bar_cap)
        if method in ("ext", "both"):
            res["ext"] = hh_via_ext(A, None, max_degree)
        report.results = res
        if method == "both":
            report.add("hh-methods-agree", A.name or "A", res["bar"] == res["ext"], **res)
        _emit(report, t0, output, not no_time)
    _run(body)


@main.command()
@click.option("--algebra", "algebra_ref")
@click.option("--idempotent", "idem_ref", required=True)
@click.option("--max-degree", default=2, show_default=True, type=click.IntRange(0))
@click.option("--cutoff", default=5, show_default=True, type=click.IntRange(0))
@click.option("--cup-samples", default=10, show_default=True, type=click.IntRange(0))
@_common
def chi(algebra_ref, idem_ref, max_degree, cutoff, cup_samples, output, no_time):
    """The comparison map HH(C) -> HH(eCe) against the grade of the defect."""
    from .hochschild import verify_corner_comparison
    from .morita import MoritaContext

    def body():
        t0 = time.perf_counter()
        C = _algebra(algebra_ref, (idem_ref, "--idempotent"))
        ctx = MoritaContext(C, _idempotent(idem_ref, C))
        subject = C.name or "C"
        report = Report("chi", job={"algebra": C.name, "dim": C.dim, "cutoff": cutoff,
                                    "max_degree": max_degree, "cup_samples": cup_samples})
        rep = verify_corner_comparison(ctx, cutoff, max_degree, cup_samples=cup_samples)
        _chi_report(report, rep, subject)
        _emit(report, t0, output, not no_time)
    _run(body)


def _chi_report(report, rep, subject):
    ch = rep.checks
    report.results = {"grade": rep.grade, "summaries": rep.summaries,
                      "relative_dims": rep.relative_dims}
    chi_keys = {k: v for k, v in ch.items() if k.startswith("chi")}
    report.add("chi-bijective-below-grade", subject,
               all(chi_keys.values()) if chi_keys else None, examined=sorted(chi_keys))
    rel = {k: v for k, v in ch.items() if k.startswith("relative") and k[8:9].isdigit()}
    report.add("relative-hh-vanishes", subject, all(rel.values()), examined=sorted(rel))
    if "relative_dims_agree" in ch:
        report.add("relative-hh-routes-agree", subject, ch["relative_dims_agree"],
                   direct=rep.relative_dims_direct)
    desc = {k: v for k, v in ch.items() if k.startswith("descends")}
    report.add("chi-descends", subject, all(desc.values()))
    if "cup_compatible" in ch:
        report.add("chi-cup-compatible", subject, ch["cup_compatible"],
                   pairs=len(rep.cup_checks))


@main.command()
@click.option("--algebra", "algebra_ref")
@click.option("--module", "module_ref", required=True)
@click.option("--cutoff", default=5, show_default=True, type=click.IntRange(0))
@click.option("--max-degree", default=2, show_default=True, type=click.IntRange(0))
@_common
def auslander(algebra_ref, module_ref, cutoff, max_degree, output, no_time):
    """The context End_A(M + A) with e the projection onto A."""
    from .hochschild import rigidity_check, verify_corner_comparison
    from .morita import auslander_context

    def body():
        t0 = time.perf_counter()
        A = _algebra(algebra_ref, (module_ref, "--module"))
        M = _module(module_ref, A)
        ctx = auslander_context(A, M)
        subject = f"End({M.name or 'M'} + A)"
        report = Report("auslander", job={"algebra": A.name, "module": M.name,
                                          "cutoff": cutoff, "max_degree": max_degree})
        ident = ctx.identification_checks()
        report.add("auslander-identification", subject, all(ident.values()), **ident)
        _context_checks(report, ctx, cutoff, subject)
        results = dict(report.results)
        rep = verify_corner_comparison(ctx, cutoff, max_degree, cup_samples=0)
        _chi_report(report, rep, subject)
        results["chi"] = report.results
        rig = rigidity_check(A, M, cutoff)
        report.add("rigidity-hh2-vanishes", subject,
                   (rig["conclusion"] and rig["methods_agree"]) if rig["hypotheses"] else None,
                   **rig)
        report.results = results
        _emit(report, t0, output, not no_time)
    _run(body)


@main.command()
@click.option("--algebra", "algebra_ref")
@click.option("--action", "action_ref", required=True)
@click.option("--cutoff", default=4, show_default=True, type=click.IntRange(0))
@click.option("--max-degree", default=3, show_default=True, type=click.IntRange(0))
@_common
def skew(algebra_ref, action_ref, cutoff, max_degree, output, no_time):
    """Skew group algebra SG, its defect and the degeneration of HH(SG)."""
    from .groups import (build_skew_group, infinitesimally_outer, sg_context_and_defect,
                         skew_group_checks, verify_degeneration)

    def body():
        t0 = time.perf_counter()
        S = _algebra(algebra_ref, (action_ref, "--action"))
        data = build_skew_group(_action(action_ref, S))
        subject = data.SG.name or "SG"
        report = Report("skew", job={"algebra": S.name, "group": data.group.name,
                                     "cutoff": cutoff, "max_degree": max_degree})
        sc = skew_group_checks(data)
        report.add("skew-group-structure", subject, all(sc.values()), **sc)
        outer = infinitesimally_outer(data)
        report.add("infinitesimally-outer", subject, outer.routes_agree, outer=outer.outer,
                   centralizer_dim=outer.centralizer_dim)
        sg = sg_context_and_defect(data, cutoff)
        report.add("skew-context", subject, sg.ok, fS_checks=sg.fS_checks)
        d = verify_degeneration(data, max_degree)
        report.add("skew-hh-degeneration", subject, d.ok if d.applicable else None,
                   HH_SG=d.lhs, HH_S_SG_invariant=d.rhs)
        report.results = {"SG_dim": data.SG.dim, "R_dim": data.R.dim,
                          "defect_dim": sg.defect_dim, "grade": sg.grade,
                          "morita_equivalence": sg.morita_equivalence, "outer": outer.outer}
        _emit(report, t0, output, not no_time)
    _run(body)


@main.command()
@click.option("--algebra", "algebra_ref")
@click.option("--action", "action_ref", required=True)
@click.option("--cutoff", default=4, show_default=True, type=click.IntRange(0))
@click.option("--max-degree", default=3, show_default=True, type=click.IntRange(0))
@_common
def invariants(algebra_ref, action_ref, cutoff, max_degree, output, no_time):
    """Noether different, annihilator, grade versus depth, and HH of R = S^G."""
    from .groups import build_skew_group, verify_invariant_comparison

    def body():
        t0 = time.perf_counter()
        S = _algebra(algebra_ref, (action_ref, "--action"))
        data = build_skew_group(_action(action_ref, S))
        subject = S.name or "S"
        report = Report("invariants", job={"algebra": S.name, "group": data.group.name,
                                           "cutoff": cutoff, "max_degree": max_degree})
        cmp = verify_invariant_comparison(data, cutoff, max_degree)
        cl = cmp.clauses
        report.add("different-annihilates-defect", subject,
                   cl["different_annihilates"] and cmp.annihilator_routes_agree)
        report.add("defect-grade-bounds-depth", subject,
                   cmp.grade.lower_bound >= cmp.depth.lower_bound)
        report.add("twisted-ext-vanishes", subject, cl["twisted_ext_vanishes"])
        report.add("invariant-hh-matches", subject, cl["invariant_HH_matches_R"])
        report.results = {"hypotheses": cmp.hypotheses, "theta_dim": cmp.theta.dim,
                          "annihilator_dim": cmp.annihilator.dim, "grade": cmp.grade,
                          "depth": cmp.depth, "values": cmp.values,
                          "S_rigid_over_R": cl["S_rigid_over_R"]}
        _emit(report, t0, output, not no_time)
    _run(body)


@main.command()
@click.option("--only", multiple=True, help="Run only these batteries (repeatable).")
@click.option("--workers", default=1, show_default=True, type=click.IntRange(1))
@click.option("--list", "list_", is_flag=True, help="List batteries and check names.")
@_common
def suite(only, workers, list_, output, no_time):
    """Run the full verification battery over the bundled corpus."""
    from .suite import BATTERIES, run_suite
    if list_:
        click.echo("batteries:")
        for name in BATTERIES:
            click.echo(f"  {name}")
        click.echo("checks:")
        for name, desc in REGISTRY.items():
            click.echo(f"  {name}: {desc}")
        return
    bad = [b for b in only if b not in BATTERIES]
    if bad:
        raise InputError(f"unknown battery: {', '.join(bad)}")

    def body():
        t0 = time.perf_counter()
        report = run_suite(only or None, workers)
        _emit(report, t0, output, not no_time)
    _run(body)


if __name__ == "__main__":
    main()
