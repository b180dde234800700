"""Étale images over finite fields, Q_p and the reals."""

from .finite import DEFAULT_BUDGET, PointSet, enumerate_finite, image_mask, image_size
from .padic import (
    Answer,
    BallAudit,
    MembershipAnswer,
    least_ball_exponent,
    member_padic,
    padic_ball_audit,
)
from .real import Interval, IntervalUnion, member_real, member_real_point, real_intervals

__all__ = [
    "Answer",
    "BallAudit",
    "DEFAULT_BUDGET",
    "Interval",
    "IntervalUnion",
    "MembershipAnswer",
    "PointSet",
    "enumerate_finite",
    "image_mask",
    "image_size",
    "least_ball_exponent",
    "member_padic",
    "member_real",
    "member_real_point",
    "padic_ball_audit",
    "real_intervals",
]
