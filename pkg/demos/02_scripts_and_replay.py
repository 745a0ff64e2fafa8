"""Operation scripts: generation, text round trips and verification.

Every distance comes with a replayable witness.  Witnesses serialize to
a plain text format (one operation per line) that the verifier and the
command line tool both understand, so results can be checked by an
independent process.
"""

import random

import treemoves as tm
from treemoves.generate import random_operations, random_recursive_tree

rng = random.Random(2024)

t1 = random_recursive_tree(rng, 12)
t2, ground_truth = random_operations(rng, t1, 5)

print("start:", tm.serialize_tree(t1))
print("goal: ", tm.serialize_tree(t2))
print()
print("the five operations that produced the goal:")
print(tm.format_script(ground_truth))
print()

# The ground truth is an upper-bound witness, rarely an optimal one.
# The exhaustive guard defaults to 8 labels; this pair is small enough
# to lift it a little.
print("ground-truth size:", tm.sequence_size(ground_truth))
exact = tm.brute_force_distance(t1, t2, max_labels=12)
print("optimal size:     ", exact.distance)
print()

# Scripts survive a text round trip and verification stays independent
# of how the sequence was found.
text = tm.format_script(exact.witness)
parsed = tm.parse_script(text)
print("optimal witness, after a text round trip:")
print(text)
print("verifies:", tm.verify_sequence(t1, parsed, t2))
print()

# Any sequence can be reordered into canonical form (one permutation,
# then moves only) without changing its effect or size.
canonical = tm.canonicalize_sequence(ground_truth)
print("ground truth in canonical form:")
print(tm.format_script(canonical))
print("still verifies:", tm.verify_sequence(t1, canonical, t2))
