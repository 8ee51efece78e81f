"""Clustering evaluation."""

from clusternet.metrics.scores import (
    AccuracyMode,
    LabelPair,
    accuracy,
    contingency,
    evaluate,
    nmi,
)

__all__ = ["AccuracyMode", "LabelPair", "accuracy", "contingency", "evaluate", "nmi"]
