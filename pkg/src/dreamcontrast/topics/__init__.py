from .contrast import CRITICAL_05, ContrastResult, contrast_samples, critical_value, g_test
from .filtering import MODES, content_filter, content_tokens
from .lda import (TopicAnnotation, TopicModel, annotate_all, annotate_topics, default_alpha,
                  fit_lda, load_topic_model, ranked_words, save_topic_model, top_words)

__all__ = [
    "CRITICAL_05", "ContrastResult", "MODES", "TopicAnnotation", "TopicModel", "annotate_all",
    "annotate_topics", "content_filter", "content_tokens", "contrast_samples", "critical_value",
    "default_alpha", "fit_lda", "g_test", "load_topic_model", "ranked_words",
    "save_topic_model", "top_words",
]
