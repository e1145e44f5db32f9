"""Torsion and hyperelliptic fibers, bi-tricanonical generator tables and
normal bundles of lines in Q."""
from .fibers import FiberData, classify_fibers
from .bitri import BidegreeTable, bitri_table
from .normal import NormalBundle, normal_bundle, normal_bundle_of
from .report import ClassificationReport, classify

__all__ = ["FiberData", "classify_fibers", "BidegreeTable", "bitri_table", "NormalBundle",
           "normal_bundle", "normal_bundle_of", "ClassificationReport", "classify"]
