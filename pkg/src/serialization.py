"""
JSON artifacts. Every dump is a pydantic model carrying schema_version, with
lists in a canonical order so that identical runs write identical bytes.
Rationals are rendered "p/q" (integers as "p").
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Mapping

from pydantic import BaseModel, Field

from src.algebra.ainfinity import AInfCategory, Morphism
from src.algebra.twisted import TwistedComplex
from src.geometry.coamoeba import build_coamoeba, cover_provenance, object_id
from src.geometry.permutohedron import Division, TorusTessellation, ordered_divisions
from src.mirror.verify import ComparisonReport, ConeSystem

SCHEMA_VERSION = "1"


def render_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_morphism(m: Morphism) -> str:
    return f"{m.source}->{m.target}:{m.name}"


def _blocks(d: Division) -> list[list[int]]:
    return [sorted(b) for b in d.blocks]


# --- categories ---------------------------------------------------------------------------


class MorphismRecord(BaseModel):
    source: str
    target: str
    name: str
    degree: int


class OperationRecord(BaseModel):
    arity: int
    inputs: list[str]
    output: str
    coefficient: str


class CategoryDump(BaseModel):
    schema_version: str = SCHEMA_VERSION
    kind: str
    n: int | None = None
    objects: list[str]
    units: dict[str, str]
    morphisms: list[MorphismRecord]
    operations: list[OperationRecord]


class ProvenanceRecord(BaseModel):
    morphism: str
    division: list[list[int]]
    source_translate: list[int]
    target_translate: list[int]
    source_character: list[int]
    target_character: list[int]


class CoverCategoryDump(CategoryDump):
    provenance: list[ProvenanceRecord] = Field(default_factory=list)


def _category_fields(cat: AInfCategory) -> dict:
    morphisms = [
        MorphismRecord(source=x, target=y, name=name, degree=degree)
        for (x, y), space in sorted(cat.homs.items())
        for name, degree in space.basis
    ]
    operations = [
        OperationRecord(
            arity=len(inputs),
            inputs=[render_morphism(m) for m in inputs],
            output=render_morphism(out),
            coefficient=render_rational(c),
        )
        for inputs, output in cat.ops.items()
        for out, c in output.items()
    ]
    operations.sort(key=lambda r: (r.arity, r.inputs, r.output))
    return {
        "objects": list(cat.objects),
        "units": {x: render_morphism(u) for x, u in sorted(cat.units.items())},
        "morphisms": morphisms,
        "operations": operations,
    }


def category_dump(cat: AInfCategory, kind: str, n: int | None = None) -> CategoryDump:
    return CategoryDump(kind=kind, n=n, **_category_fields(cat))


def cover_category_dump(cat: AInfCategory, n: int) -> CoverCategoryDump:
    provenance = []
    for (x, y), space in sorted(cat.homs.items()):
        if x == y:
            continue
        for name in space.names:
            m = Morphism(x, y, name)
            info = cover_provenance(m)
            provenance.append(
                ProvenanceRecord(
                    morphism=render_morphism(m),
                    division=_blocks(info["division"]),
                    source_translate=list(info["source_translate"]),
                    target_translate=list(info["target_translate"]),
                    source_character=list(info["source_character"].weight),
                    target_character=list(info["target_character"].weight),
                )
            )
    return CoverCategoryDump(kind="cover", n=n, provenance=provenance, **_category_fields(cat))


# --- twisted complexes and cohomology ------------------------------------------------------------


class TermRecord(BaseModel):
    shift: int
    object: str


class ConnectionRecord(BaseModel):
    source_term: int
    target_term: int
    morphism: str
    coefficient: str


class TwistedComplexDump(BaseModel):
    schema_version: str = SCHEMA_VERSION
    name: str
    terms: list[TermRecord]
    differential: list[ConnectionRecord]


def twisted_complex_dump(x: TwistedComplex) -> TwistedComplexDump:
    differential = [
        ConnectionRecord(
            source_term=m.source_term,
            target_term=m.target_term,
            morphism=render_morphism(m.morphism),
            coefficient=render_rational(c),
        )
        for m, c in x.differential.items()
    ]
    differential.sort(key=lambda r: (r.source_term, r.target_term, r.morphism))
    return TwistedComplexDump(
        name=x.name,
        terms=[TermRecord(shift=t.shift, object=t.obj) for t in x.underlying.terms],
        differential=differential,
    )


class CohomologyEntry(BaseModel):
    source: str
    target: str
    dims: dict[str, int]


class CohomologyTableDump(BaseModel):
    schema_version: str = SCHEMA_VERSION
    n: int
    entries: list[CohomologyEntry]


def _dims(d: Mapping[int, int]) -> dict[str, int]:
    return {str(k): v for k, v in sorted(d.items())}


def cohomology_table_dump(system: ConeSystem) -> CohomologyTableDump:
    entries = [
        CohomologyEntry(source=system.cones[a].name, target=system.cones[b].name, dims=_dims(system.dims(a, b)))
        for a in sorted(system.cones)
        for b in sorted(system.cones)
    ]
    return CohomologyTableDump(n=system.n, entries=entries)


# --- the face lattice ------------------------------------------------------------------------


class FacetRecord(BaseModel):
    blocks: list[list[int]]
    degree: int


class Codim2Record(BaseModel):
    blocks: list[list[int]]
    sign: int


class FaceLatticeDump(BaseModel):
    schema_version: str = SCHEMA_VERSION
    n: int
    cells: list[str]
    vertices: int
    faces_by_dimension: dict[str, int]
    facets: list[FacetRecord]
    codim2: list[Codim2Record]


def face_lattice_dump(t: TorusTessellation) -> FaceLatticeDump:
    n = t.n
    g = build_coamoeba(n)
    return FaceLatticeDump(
        n=n,
        cells=[object_id(i) for i in range(1, n + 2)],
        vertices=len(t.polytope.vertices),
        faces_by_dimension={str(d): len(ordered_divisions(n + 1, n + 1 - d)) for d in range(n + 1)},
        facets=[FacetRecord(blocks=_blocks(f), degree=g.deg[f]) for f in t.polytope.facets],
        codim2=[Codim2Record(blocks=_blocks(e), sign=g.sgn[e]) for e in t.polytope.codim2],
    )


# --- verification reports --------------------------------------------------------------------------


class CheckRecord(BaseModel):
    name: str
    cases: int
    failures: int
    passed: bool


class MismatchRecord(BaseModel):
    check: str
    key: str
    expected: str
    actual: str


class HomTableEntry(BaseModel):
    source: str
    target: str
    dims: dict[str, int]
    fingerprint: str


class ComparisonReportDump(BaseModel):
    schema_version: str = SCHEMA_VERSION
    n: int
    verdict: str
    checks: list[CheckRecord]
    mismatches: list[MismatchRecord]
    hom_table: list[HomTableEntry] = Field(default_factory=list)


class VerificationRunDump(BaseModel):
    schema_version: str = SCHEMA_VERSION
    verdict: str
    reports: list[ComparisonReportDump]


def comparison_report_dump(report: ComparisonReport) -> ComparisonReportDump:
    table = []
    if report.hom_table is not None:
        table = [
            HomTableEntry(source=x, target=y, dims=_dims(dims), fingerprint=report.hom_table.fingerprints[(x, y)])
            for (x, y), dims in sorted(report.hom_table.dims.items())
        ]
    return ComparisonReportDump(
        n=report.n,
        verdict=report.verdict,
        checks=[CheckRecord(name=c.name, cases=c.cases, failures=c.failures, passed=c.passed) for c in report.checks],
        mismatches=[
            MismatchRecord(check=m.check, key=m.key, expected=m.expected, actual=m.actual) for m in report.mismatches
        ],
        hom_table=table,
    )


def verification_run_dump(reports: list[ComparisonReport]) -> VerificationRunDump:
    verdict = "pass" if all(r.verdict == "pass" for r in reports) else "fail"
    return VerificationRunDump(verdict=verdict, reports=[comparison_report_dump(r) for r in reports])


def write_json(path: str | Path, model: BaseModel, schema_version: str | None = None) -> Path:
    if schema_version is not None:
        model = model.model_copy(update={"schema_version": schema_version})
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path
