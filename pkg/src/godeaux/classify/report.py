"""The combined classification of a line (and optionally its candidate)."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import SingularityError
from ..qgeom.core import Line
from .bitri import DEFAULT_MAX_BIDEGREE, BidegreeTable, bitri_table
from .fibers import FiberData, classify_fibers
from .normal import NormalBundle, normal_bundle


@dataclass
class ClassificationReport:
    fibers: FiberData
    bidegree_table: BidegreeTable | None = None
    normal_bundle: NormalBundle | None = None
    normal_bundle_error: str | None = None

    @property
    def b(self) -> int:
        return self.fibers.b

    @property
    def torsion_group(self) -> str:
        return self.fibers.torsion_group

    @property
    def consistent(self) -> bool:
        return self.fibers.b in (0, 1, 2)

    def to_json(self) -> dict:
        f = self.fibers.to_json()
        out = {"schema": "godeaux.classification/1",
               "torsion_points": f["torsion_points"], "b": f["b"],
               "hyperelliptic_points": f["hyperelliptic_points"],
               "hyperelliptic_count": f["hyperelliptic_count"],
               "torsion_group": f["torsion_group"], "consistent": self.consistent,
               "bidegree_table": self.bidegree_table.to_json() if self.bidegree_table else None,
               "normal_bundle": self.normal_bundle.degrees if self.normal_bundle else None}
        if self.bidegree_table is not None:
            out["bidegree_bound"] = list(self.bidegree_table.max_bidegree)
            out["bound_limited"] = self.bidegree_table.bound_limited
        if self.normal_bundle is not None:
            out["h0"], out["h1"] = self.normal_bundle.h0, self.normal_bundle.h1
        if self.normal_bundle_error:
            out["normal_bundle_error"] = self.normal_bundle_error
        out["rank_checks"] = f["rank_checks"]
        out["torsion_form"] = f["torsion_form"]
        out["hyperelliptic_form"] = f["hyperelliptic_form"]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ClassificationReport":
        table = None
        if data.get("bidegree_table") is not None:
            table = BidegreeTable.from_json(data["bidegree_table"], data["bidegree_bound"])
        nb = NormalBundle(list(data["normal_bundle"])) if data.get("normal_bundle") else None
        return cls(FiberData.from_json(data), table, nb, data.get("normal_bundle_error"))


def classify(line: Line, cand=None, max_bidegree=DEFAULT_MAX_BIDEGREE,
             with_normal_bundle: bool = True) -> ClassificationReport:
    rep = ClassificationReport(classify_fibers(line))
    if cand is not None:
        rep.bidegree_table = bitri_table(cand, max_bidegree)
    if with_normal_bundle:
        try:
            rep.normal_bundle = normal_bundle(line)
        except SingularityError as exc:
            rep.normal_bundle_error = str(exc)
    return rep
