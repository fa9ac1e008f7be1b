from ._common import ModelError
from .evaluation import (ALGORITHMS, CvPlan, EvalReport, auc, cross_validate, cross_validate_many,
                         make_author_folds, micro_metrics)
from .model_io import load_model, save_model
from .naive_bayes import NaiveBayesModel, train_nb
from .svm import SvmModel, primal_objective, train_svm
from .winnow import WinnowModel, top_features, train_winnow


def predict(model, fv):
    """``(label, score)``; ``score`` grows with confidence in the positive label."""
    return model.predict(fv)


__all__ = [
    "ALGORITHMS", "CvPlan", "EvalReport", "ModelError", "NaiveBayesModel", "SvmModel",
    "WinnowModel", "auc", "cross_validate", "cross_validate_many", "load_model",
    "make_author_folds", "micro_metrics", "predict", "primal_objective", "save_model",
    "top_features", "train_nb", "train_svm", "train_winnow",
]
