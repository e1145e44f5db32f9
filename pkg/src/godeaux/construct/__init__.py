"""Second-step solution spaces, assembly of d1 and d2, and verification."""
from .second_step import (N_UNKNOWNS, SolutionSpace, identity_residuals, raw_kernel_dim,
                          raw_system, solve_second_step, structured_system)
from .assemble import ResolutionCandidate, assemble
from .verify import VerifyReport, verify

__all__ = ["N_UNKNOWNS", "SolutionSpace", "identity_residuals", "raw_kernel_dim", "raw_system",
           "solve_second_step", "structured_system", "ResolutionCandidate", "assemble",
           "VerifyReport", "verify"]
