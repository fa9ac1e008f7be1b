from .egrid import (ROLES, DiscriminationReport, EgridModel, EntityGrid, Outcome,
                    build_entity_grid, discrimination_report, discrimination_test,
                    evaluate_corpus, permutation_scores, permute_document, sample_permutations,
                    score_grid, sentence_roles, train_egrid, transitions)
from .markers import (EXCLUDED, MarkerLexicon, MarkerProfile, count_markers, load_lexicon,
                      make_lexicon, match_connectives)

__all__ = [
    "EXCLUDED", "ROLES", "DiscriminationReport", "EgridModel", "EntityGrid", "MarkerLexicon",
    "MarkerProfile", "Outcome", "build_entity_grid", "count_markers", "discrimination_report",
    "discrimination_test", "evaluate_corpus", "load_lexicon", "make_lexicon",
    "match_connectives", "permutation_scores", "permute_document", "sample_permutations",
    "score_grid", "sentence_roles", "train_egrid", "transitions",
]
