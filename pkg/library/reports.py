"""
Report records shared by the library, the CLI and the tool server.

JSON is the canonical form (``model_dump_json``); text output is derived from
the same data. Timing fields never enter the canonical JSON.
"""

from typing import Literal, Optional

from pydantic import BaseModel, Field

Status = Literal["pass", "fail", "skipped"]
Verdict = Literal["pass", "fail", "incomplete"]


class CheckOutcome(BaseModel):
    name: str
    status: Status
    detail: str = ""

    @classmethod
    def of(cls, name: str, ok: bool, detail: str = "") -> "CheckOutcome":
        return cls(name=name, status="pass" if ok else "fail", detail=detail)

    @classmethod
    def skipped(cls, name: str, reason: str) -> "CheckOutcome":
        return cls(name=name, status="skipped", detail=reason)


def verdict_of(checks: list[CheckOutcome]) -> Verdict:
    """fail beats incomplete beats pass."""
    statuses = {c.status for c in checks}
    if "fail" in statuses:
        return "fail"
    if "skipped" in statuses:
        return "incomplete"
    return "pass"


class FieldHeader(BaseModel):
    p: int
    e: int
    n: int
    modulus: list[int]


class ProfileRecord(BaseModel):
    q: int
    n: int
    r_list: list[int]
    delta: list[int]
    eta: int
    I: list[int]
    M: int
    deg_f: int
    deg_u: int
    deg_v: Optional[int] = None


class StructureReport(BaseModel):
    profile: ProfileRecord
    clauses: list[CheckOutcome]

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.clauses)


class ValueSetReport(BaseModel):
    field: FieldHeader
    values: list[list[int]]
    expected_size: int
    equals_subfield: bool
    size_ok: bool

    @property
    def passed(self) -> bool:
        return self.equals_subfield and self.size_ok


class FiberRoot(BaseModel):
    root: list[int]
    multiplicity: int
    in_subfield: bool


class FiberReport(BaseModel):
    field: FieldHeader
    gamma: list[int]
    degree: int
    roots: list[FiberRoot]
    found: int
    deficit: int
    has_simple_root: bool
    multiplicity_ok: bool


class FiberSweepReport(BaseModel):
    field: FieldHeader
    fibers: list[FiberReport]
    without_simple_root: int
    multiplicities_ok: bool

    @property
    def passed(self) -> bool:
        return self.without_simple_root <= 1 and self.multiplicities_ok


class CurveRecord(BaseModel):
    q: int
    n: int
    r_list: list[int]
    deg_f: int
    deg_u: int
    N_formula: int
    N_bruteforce: Optional[int] = None
    genus_formula: Optional[int] = None
    gcd_cert: int
    mvsp_ok: Optional[bool] = None
    value_set_ok: Optional[bool] = None
    fibers_ok: Optional[bool] = None


class ValuationEntry(BaseModel):
    name: str
    pole_order: int
    expected: int
    iterations: int
    passed: bool


class PoleOrderReport(BaseModel):
    q: int
    n: int
    r: int
    w1_branches: list[str]
    entries: list[ValuationEntry]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)


class TelescopicStep(BaseModel):
    index: int
    d: int
    reduced_generator: int
    ladder: list[int]
    member: bool


class SemigroupRecord(BaseModel):
    gens: list[int]
    m_2: int
    frobenius: int
    genus: int
    symmetric: bool
    telescopic: bool
    telescopic_genus: Optional[int] = None
    redundant_gens: list[int] = Field(default_factory=list)
    corollary_same: Optional[bool] = None
    castle: Optional[bool] = None


class ReferenceRecord(BaseModel):
    q: int
    n: int
    N_nt: int
    g_nt: int
    N_gs: int
    g_gs: int
    N_H: int
    g_H: int


class CertReport(BaseModel):
    field: FieldHeader
    family: str
    profile: ProfileRecord
    curve: CurveRecord
    valuations: list[ValuationEntry] = Field(default_factory=list)
    semigroup: Optional[SemigroupRecord] = None
    references: Optional[ReferenceRecord] = None
    checks: list[CheckOutcome]
    verdict: Verdict
    timings: dict[str, float] = Field(default_factory=dict)

    def canonical(self) -> dict:
        return self.model_dump(exclude={"timings"})

    def canonical_json(self) -> str:
        return self.model_dump_json(exclude={"timings"}, indent=2)


class SweepRow(BaseModel):
    q: int
    n: int
    r_list: list[int]
    deg_f: Optional[int] = None
    deg_u: Optional[int] = None
    N_formula: Optional[int] = None
    N_bruteforce: Optional[int] = None
    genus_formula: Optional[int] = None
    genus_semigroup: Optional[int] = None
    mvsp_ok: Optional[bool] = None
    symmetric: Optional[bool] = None
    telescopic: Optional[bool] = None
    castle: Optional[bool] = None
    ratio_N_over_g: Optional[float] = None
    genus_gs: Optional[int] = None
    ratio_gs: Optional[float] = None
    genus_nt: Optional[int] = None
    note: str = ""


class ConstructRecord(BaseModel):
    field: FieldHeader
    family: str
    profile: ProfileRecord
    f: str
    u: str
    v: str
    f_tilde: str
    genus_formula: Optional[int] = None
    N_formula: int
