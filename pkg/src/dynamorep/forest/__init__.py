"""From-scratch random forest classification."""

from .model import RandomForestClassifier

__all__ = ["RandomForestClassifier"]
