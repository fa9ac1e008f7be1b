"""Hand-counted connective fixture (bundled lexicon, longest match first)."""

# (text, expected connective counts); everything not listed must be zero
MARKER_CASES = [
    ("but then , even though it rained , then we left", {"but": 1, "then": 2, "even though": 1}),
    ("and then we left", {"then": 1}),
    ("and and and", {}),
    ("BUT Then", {"but": 1, "then": 1}),
    ("even if it rains", {"even if": 1}),
    ("even so", {"so": 1}),
    ("so that we could", {"so that": 1}),
    ("so we could", {"so": 1}),
    ("as soon as possible", {"as soon as": 1}),
    ("as long as you like", {"as long as": 1}),
    ("as it was", {"as": 1}),
    ("on the other hand it was fine", {"on the other hand": 1}),
    ("on the other side", {}),
    ("in the end we won", {"in the end": 1}),
    ("in the middle", {}),
    ("for example , dogs", {"for example": 1}),
    ("for instance cats", {"for instance": 1}),
    ("for a while", {"while": 1}),
    ("if then else", {"if then": 1}),
    ("if only", {"if": 1}),
    ("as a result of the storm", {"as a result": 1}),
    ("as a rule", {"as": 1}),
    ("in fact in addition", {"in fact": 1, "in addition": 1}),
    ("though though", {"though": 2}),
    ("although it was late", {"although": 1}),
    ("now that you are here", {"now that": 1}),
    ("now we go", {}),
    ("however , later , finally", {"however": 1, "later": 1, "finally": 1}),
    ("", {}),
    ("whereas before , since , until", {"whereas": 1, "before": 1, "since": 1, "until": 1}),
]
