"""Certified numerics: balls, computable scalars, root isolation, certificates, tracking."""

from .ball import Ball, BallDivisionError, ball, hull
from .certify import (NonvanishingCertificate, TailBounds, certify_ball_nonvanishing, c_upper,
                      k_tail, tail_constants)
from .evaluate import coefficient_balls, eval_mpoly, eval_ratfunc, eval_tower, horner
from .roots import RootIsolation, isolate_roots, krawczyk, refine_root
from .scalars import ComputableScalar, OracleProcess, exp_ball, log_ball, pi_ball, refine_scalar
from .track import BaseRoot, TrackResult, track_root, z_ball

__all__ = [
    "Ball", "BallDivisionError", "ball", "hull",
    "NonvanishingCertificate", "TailBounds", "certify_ball_nonvanishing", "c_upper", "k_tail",
    "tail_constants",
    "coefficient_balls", "eval_mpoly", "eval_ratfunc", "eval_tower", "horner",
    "RootIsolation", "isolate_roots", "krawczyk", "refine_root",
    "ComputableScalar", "OracleProcess", "exp_ball", "log_ball", "pi_ball", "refine_scalar",
    "BaseRoot", "TrackResult", "track_root", "z_ball",
]
