"""
Certification runs over curve instances.

MvspCertifier wires the field, polynomial, curve, valuation and semigroup
layers into single reports, and sweeps parameter ranges into table rows.
"""

import csv
import io
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .common_utils import CertifierContext, get_certifier_context
from .curve import (
    CurveInstance,
    affine_smooth,
    castle_check,
    count_points_bruteforce,
    curve_for,
    fiber_sweep,
    gs_family,
    h_family,
    h_parameter,
    hasse_weil_ok,
    norm_trace_family,
    reference_formulas,
    single_point_at_infinity,
    value_set_check,
)
from .errors import AmbiguousValuationError, EnumerationBoundError, WitnessError
from .mvsp import build_f_tilde, check_structure, profile_record, sorted_delta_genus
from .nsg import (
    NumericalSemigroup,
    corollary_generators,
    hermitian_generators,
    semigroup_record,
    weierstrass_generators,
)
from .reports import (
    CertReport,
    CheckOutcome,
    ConstructRecord,
    CurveRecord,
    SemigroupRecord,
    SweepRow,
    ValuationEntry,
    verdict_of,
)
from .wsg import check_snm_identity, check_yqn_identity, verify_pole_orders

logger = logging.getLogger(__name__)

FAMILIES = ("h", "gs", "norm-trace")
SWEEP_PROFILES = ("all", "h-family")
SWEEP_COLUMNS = (
    "q",
    "n",
    "r_list",
    "deg_f",
    "deg_u",
    "N_formula",
    "N_bruteforce",
    "genus_formula",
    "genus_semigroup",
    "mvsp_ok",
    "symmetric",
    "telescopic",
    "castle",
    "ratio_N_over_g",
    "genus_gs",
    "ratio_gs",
    "genus_nt",
    "note",
)

_FAMILY_BUILDERS = {
    "h": h_family,
    "gs": gs_family,
    "norm-trace": norm_trace_family,
}


def resolve_instance(
    q: int,
    n: int,
    r_tuple: Optional[Sequence[int]] = None,
    family: Optional[str] = None,
    context: Optional[CertifierContext] = None,
) -> CurveInstance:
    """
    Build the curve for an explicit r-tuple or a named family.

    An explicit tuple equal to (0, r(n)) is labelled as the H-family.

    Raises:
        ValueError: both or neither of r_tuple/family given, or an unknown family.
    """
    if (r_tuple is None) == (family is None):
        raise ValueError("Give exactly one of r_tuple or family")
    if family is not None:
        builder = _FAMILY_BUILDERS.get(family)
        if builder is None:
            raise ValueError(f"Unknown family {family!r}; expected one of {FAMILIES}")
        return builder(q, n, context=context)
    r = tuple(int(v) for v in r_tuple)
    label = "h" if n >= 2 and r == (0, h_parameter(n)) else "custom"
    return curve_for(q, n, r, family=label, context=context)


@contextmanager
def _phase(timings: dict, name: str) -> Iterator[None]:
    start = time.perf_counter()
    try:
        yield
    finally:
        timings[name] = round(timings.get(name, 0.0) + time.perf_counter() - start, 6)


def _h_semigroup(c: CurveInstance) -> Sequence[int]:
    if c.n == 2:
        return hermitian_generators(c.q)
    return weierstrass_generators(c.q, c.n, c.r_list[1])


class MvspCertifier:
    """
    Construct, certify and sweep curve instances under one context.
    """

    def __init__(self, context: CertifierContext | None = None):
        self.context = context or get_certifier_context()

    def instance(
        self, q: int, n: int, r_tuple: Optional[Sequence[int]] = None, family: Optional[str] = None
    ) -> CurveInstance:
        return resolve_instance(q, n, r_tuple=r_tuple, family=family, context=self.context)

    def construct(
        self, q: int, n: int, r_tuple: Optional[Sequence[int]] = None, family: Optional[str] = None
    ) -> ConstructRecord:
        """
        Build an instance and return its profile with f, u, v and f~ rendered.

        Returns:
            ConstructRecord
        """
        c = self.instance(q, n, r_tuple=r_tuple, family=family)
        logger.info(f"Constructed q={q} n={n} r={c.r_list} family={c.family}: deg f={c.deg_f}")
        return ConstructRecord(
            field=c.field_header,
            family=c.family,
            profile=profile_record(c.pr),
            f=c.f.render(),
            u=c.u.render(),
            v=c.v.render(),
            f_tilde=build_f_tilde(c.pr).render(),
            genus_formula=c.genus_formula,
            N_formula=c.N_formula,
        )

    def certify(
        self, q: int, n: int, r_tuple: Optional[Sequence[int]] = None, family: Optional[str] = None
    ) -> CertReport:
        """
        Run every applicable check on one instance.

        Oracles that would exceed the context bounds are reported as skipped,
        which turns the verdict into "incomplete".

        Returns:
            CertReport
        """
        timings: dict[str, float] = {}
        checks: list[CheckOutcome] = []

        with _phase(timings, "construct"):
            c = self.instance(q, n, r_tuple=r_tuple, family=family)

        with _phase(timings, "structure"):
            structure = check_structure(c.pr)
            failed = [cl.name for cl in structure.clauses if cl.status == "fail"]
            checks.append(CheckOutcome.of("mvsp_structure", structure.passed, f"failed: {failed}" if failed else ""))
            checks.append(CheckOutcome.of("single_point_at_infinity", single_point_at_infinity(c)))
            checks.append(CheckOutcome.of("affine_smooth", affine_smooth(c)))

        curve = CurveRecord(
            q=c.q,
            n=c.n,
            r_list=list(c.r_list),
            deg_f=c.deg_f,
            deg_u=c.deg_u,
            N_formula=c.N_formula,
            genus_formula=c.genus_formula,
            gcd_cert=c.gcd_cert,
            mvsp_ok=structure.passed,
        )

        with _phase(timings, "oracles"):
            checks.extend(self._oracle_checks(c, curve))

        genus = c.genus_formula
        if genus is None:
            checks.append(CheckOutcome.skipped("genus_certified", f"gcd(delta, n)={c.gcd_cert}"))
        else:
            checks.append(CheckOutcome.of("genus_certified", True))
            closed = sorted_delta_genus(c.pr)
            if closed is not None:
                checks.append(CheckOutcome.of("sorted_delta_genus", closed == genus, f"closed form {closed}"))
            if curve.N_bruteforce is not None:
                checks.append(CheckOutcome.of("hasse_weil", hasse_weil_ok(curve.N_bruteforce, genus, c.q, c.n)))

        references = reference_formulas(c.q, c.n) if c.n >= 2 else None
        if references is not None and genus is not None:
            if c.family == "gs":
                checks.append(CheckOutcome.of("genus_reference", genus == references.g_gs, f"g_gs={references.g_gs}"))
            elif c.family == "norm-trace":
                checks.append(CheckOutcome.of("genus_reference", genus == references.g_nt, f"g_nt={references.g_nt}"))

        semigroup = None
        valuations: list[ValuationEntry] = []
        if c.family == "h":
            with _phase(timings, "semigroup"):
                semigroup, sg_checks = self._semigroup_checks(c, curve.N_bruteforce)
                checks.extend(sg_checks)
            if c.n >= 3:
                with _phase(timings, "valuations"):
                    valuations, pole_check = self._pole_order_check(c)
                    checks.append(pole_check)
                with _phase(timings, "identities"):
                    checks.extend(self._identity_checks(c))

        report = CertReport(
            field=c.field_header,
            family=c.family,
            profile=structure.profile,
            curve=curve,
            valuations=valuations,
            semigroup=semigroup,
            references=references,
            checks=checks,
            verdict=verdict_of(checks),
            timings=timings,
        )
        logger.info(f"Certified q={c.q} n={c.n} r={c.r_list}: verdict={report.verdict}")
        return report

    def _oracle_checks(self, c: CurveInstance, curve: CurveRecord) -> list[CheckOutcome]:
        checks = []
        try:
            value_set = value_set_check(c, self.context)
            curve.value_set_ok = value_set.passed
            curve.mvsp_ok = curve.mvsp_ok and value_set.passed
            checks.append(
                CheckOutcome.of(
                    "value_set",
                    value_set.passed,
                    f"{len(value_set.values)} values, expected {value_set.expected_size}",
                )
            )
        except EnumerationBoundError as exc:
            logger.warning(f"Value set skipped: {exc}")
            checks.append(CheckOutcome.skipped("value_set", str(exc)))

        try:
            fibers = fiber_sweep(c, self.context)
            curve.fibers_ok = fibers.passed
            checks.append(
                CheckOutcome.of("fibers", fibers.passed, f"without simple root: {fibers.without_simple_root}")
            )
        except EnumerationBoundError as exc:
            logger.warning(f"Fiber sweep skipped: {exc}")
            checks.append(CheckOutcome.skipped("fibers", str(exc)))

        try:
            curve.N_bruteforce = count_points_bruteforce(c, context=self.context)
            checks.append(
                CheckOutcome.of(
                    "point_count",
                    curve.N_bruteforce == c.N_formula,
                    f"N={curve.N_bruteforce}, formula {c.N_formula}",
                )
            )
        except EnumerationBoundError as exc:
            logger.warning(f"Point count skipped: {exc}")
            checks.append(CheckOutcome.skipped("point_count", str(exc)))
        except RuntimeError as exc:
            logger.error(f"Point count failed: {exc}")
            checks.append(CheckOutcome.of("point_count", False, str(exc)))
        return checks

    def _semigroup_checks(
        self, c: CurveInstance, point_count: Optional[int]
    ) -> tuple[SemigroupRecord, list[CheckOutcome]]:
        gens = _h_semigroup(c)
        S = NumericalSemigroup(gens)
        castle = castle_check(c, S, point_count=point_count) if point_count is not None else None
        record = semigroup_record(gens, castle=castle)
        r = c.r_list[1]
        proposition = c.q ** r * (c.q ** (c.n - 1) - 1) // 2
        checks = [
            CheckOutcome.of(
                "genus_triple",
                c.genus_formula == proposition == record.genus,
                f"formula={c.genus_formula}, closed={proposition}, gaps={record.genus}",
            ),
            CheckOutcome.of("telescopic", record.telescopic),
            CheckOutcome.of("symmetric", record.symmetric),
            CheckOutcome.of(
                "telescopic_genus",
                record.telescopic_genus == record.genus,
                f"telescopic={record.telescopic_genus}",
            ),
        ]
        if castle is None:
            checks.append(CheckOutcome.skipped("castle", "point count unavailable"))
        else:
            checks.append(CheckOutcome.of("castle", castle, f"N={point_count}, m_2={record.m_2}"))
        if c.n >= 3:
            record.corollary_same = NumericalSemigroup(corollary_generators(c.q, c.n, r)).genus == record.genus
        return record, checks

    def _pole_order_check(self, c: CurveInstance) -> tuple[list[ValuationEntry], CheckOutcome]:
        try:
            report = verify_pole_orders(c.q, c.n, c.r_list[1], context=self.context)
        except (AmbiguousValuationError, WitnessError) as exc:
            logger.error(f"Pole orders failed for q={c.q} n={c.n}: {exc}")
            return [], CheckOutcome.of("pole_orders", False, str(exc))
        wrong = [e.name for e in report.entries if not e.passed]
        return report.entries, CheckOutcome.of("pole_orders", report.passed, f"wrong: {wrong}" if wrong else "")

    def _identity_checks(self, c: CurveInstance) -> list[CheckOutcome]:
        checks = []
        if 2 * c.r_list[1] != c.n:
            checks.append(CheckOutcome.of("yqn_identity", check_yqn_identity(c)))
        bad = [m for m in range(c.n) if not check_snm_identity(m, c.n, c.q, context=self.context)]
        checks.append(CheckOutcome.of("snm_identity", not bad, f"failing m: {bad}" if bad else ""))
        return checks

    def sweep(
        self,
        q_list: Iterable[int],
        n_min: int,
        n_max: int,
        profiles: str = "h-family",
        workers: Optional[int] = None,
    ) -> list[SweepRow]:
        """
        One row per (q, n, r) instance, sorted by (q, n, r_list).

        Rows are computed in worker processes when workers > 1.
        """
        if profiles not in SWEEP_PROFILES:
            raise ValueError(f"Unknown profiles {profiles!r}; expected one of {SWEEP_PROFILES}")
        workers = workers or self.context.workers
        tasks = [
            (q, n, r, self.context.as_dict())
            for q in sorted(set(q_list))
            for n in range(n_min, n_max + 1)
            for r in sweep_profiles(n, profiles)
        ]
        logger.info(f"Sweep: {len(tasks)} instances on {workers} worker(s)")
        if workers > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(_sweep_task, tasks))
        else:
            rows = [_sweep_task(task) for task in tasks]
        return sorted(rows, key=lambda row: (row.q, row.n, row.r_list))


def sweep_profiles(n: int, profiles: str) -> list[tuple[int, ...]]:
    if n < 1:
        return []
    if profiles == "h-family":
        return [(0, h_parameter(n))] if n >= 2 else []
    return [(0,) + combo for k in range(n) for combo in combinations(range(1, n), k)]


def _sweep_task(task: tuple) -> SweepRow:
    q, n, r_list, context_args = task
    return sweep_row(q, n, r_list, CertifierContext(**context_args))


def sweep_row(
    q: int, n: int, r_list: Sequence[int], context: Optional[CertifierContext] = None
) -> SweepRow:
    """
    Table row for one instance. Cells that do not apply stay empty; skipped
    oracles and errors are listed in `note`.
    """
    context = context or get_certifier_context()
    row = SweepRow(q=q, n=n, r_list=list(r_list))
    notes: list[str] = []
    try:
        c = resolve_instance(q, n, r_tuple=r_list, context=context)
    except EnumerationBoundError:
        row.note = "skipped:field_bound"
        return row
    except (ValueError, RuntimeError) as exc:
        logger.error(f"Sweep row q={q} n={n} r={tuple(r_list)} failed: {exc}")
        row.note = f"error:{type(exc).__name__}"
        return row

    row.deg_f, row.deg_u = c.deg_f, c.deg_u
    row.N_formula, row.genus_formula = c.N_formula, c.genus_formula
    if c.genus_formula is None:
        notes.append("genus_uncertified")

    mvsp_ok = check_structure(c.pr).passed
    try:
        mvsp_ok = mvsp_ok and value_set_check(c, context).passed
    except EnumerationBoundError:
        notes.append("skipped:value_set")
    row.mvsp_ok = mvsp_ok

    try:
        row.N_bruteforce = count_points_bruteforce(c, context=context)
    except EnumerationBoundError:
        notes.append("skipped:point_count")
    except RuntimeError:
        notes.append("error:point_count")

    if c.family == "h":
        gens = _h_semigroup(c)
        S = NumericalSemigroup(gens)
        record = semigroup_record(gens)
        row.genus_semigroup = record.genus
        row.symmetric = record.symmetric
        row.telescopic = record.telescopic
        if row.N_bruteforce is not None:
            row.castle = castle_check(c, S, point_count=row.N_bruteforce)

    if c.genus_formula:
        row.ratio_N_over_g = c.N_formula / c.genus_formula
    if n >= 2:
        ref = reference_formulas(q, n)
        row.genus_gs, row.genus_nt = ref.g_gs, ref.g_nt
        if ref.g_gs:
            row.ratio_gs = ref.N_gs / ref.g_gs
    row.note = " ".join(notes)
    logger.info(f"Sweep row q={q} n={n} r={tuple(r_list)} done")
    return row


# ---------------------------------------------------------------------- #
# Rendering
# ---------------------------------------------------------------------- #
def format_cell(value) -> str:
    """CSV/text cell: empty for None, lowercase booleans, lists joined by ';'."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".6g")
    if isinstance(value, (list, tuple)):
        return "[" + ";".join(format_cell(v) for v in value) + "]"
    return str(value)


def _inline(record: dict) -> str:
    return " ".join(f"{key}={format_cell(value)}" for key, value in record.items() if not isinstance(value, dict))


def render_construct_text(record: ConstructRecord) -> str:
    data = record.model_dump()
    lines = [f"field: {_inline(data['field'])}", f"family: {data['family']}"]
    lines += [f"{key}: {format_cell(value)}" for key, value in data["profile"].items()]
    lines += [f"{name} = {data[name]}" for name in ("f", "u", "v", "f_tilde")]
    lines.append(f"N_formula: {data['N_formula']}")
    lines.append(f"genus_formula: {format_cell(data['genus_formula'])}")
    return "\n".join(lines)


def render_report_text(report: CertReport) -> str:
    """Text view of the canonical report."""
    data = report.canonical()
    lines = [f"verdict: {data['verdict']}", f"family: {data['family']}", f"field: {_inline(data['field'])}"]
    for section in ("profile", "curve", "semigroup", "references"):
        if data[section] is not None:
            lines.append(f"{section}: {_inline(data[section])}")
    for entry in data["valuations"]:
        lines.append(
            f"valuation {entry['name']}: pole_order={entry['pole_order']} "
            f"expected={entry['expected']} iterations={entry['iterations']}"
        )
    for check in data["checks"]:
        detail = f" ({check['detail']})" if check["detail"] else ""
        lines.append(f"check {check['name']}: {check['status']}{detail}")
    return "\n".join(lines)


def render_sweep_csv(rows: Sequence[SweepRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        data = row.model_dump()
        writer.writerow([format_cell(data[col]) for col in SWEEP_COLUMNS])
    return buffer.getvalue()
