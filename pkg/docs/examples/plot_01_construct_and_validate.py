"""
Building a cyclic PDA and checking it
=====================================

Twelve users on a ring, each cache holding 2 of the 12 sub-files of every
file, each user reaching 4 neighbouring caches.
"""

from cyclic_pda import Pda, check_params, construct_stages, format_pda, validate, validate_oracle

params = check_params(12, 2, 4)
print(params.m, params.A_dim, params.S1, params.g)

###############################################################################
# The construction goes through a small triangular seed array, a block
# arrangement of it, a row expansion, and finally side-by-side shifted copies.

stages = construct_stages(12, 2, 4)
print(format_pda(stages.A, header=False))
print(format_pda(stages.P1, header=False))
print(format_pda(stages.pda))

###############################################################################
# The fast validator and the brute-force one must agree.

rep = validate(stages.pda)
print(rep.summary)
assert rep == validate_oracle(stages.pda)

###############################################################################
# Break one entry and look at what gets flagged.

bad = stages.pda.entries.copy()
bad[0, 1] = bad[1, 1]
for v in validate(Pda(bad)).violations:
    print(v)
