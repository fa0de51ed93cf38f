"""
Stress-testing schemata
=======================

The laboratory instantiates axiom schemata over a bank of exhaustively
enumerated small models plus seeded random ones, and hunts for
countermodels.  A failed expectation prints a complete, replayable
refutation.
"""

from knowpool.formula import print_formula
from knowpool.kripke import save
from knowpool.lab import GenConfig, check_schema
from knowpool.semantics import extension

cfg = GenConfig(samples=25)

# reflection and the two introspection laws for dependent knowledge
for name in ("akt", "ak4", "ak5"):
    rep = check_schema(name, cfg)
    print("%-4s %-16s models=%-5d instances=%d"
          % (name, rep.verdict, rep.models, rep.instances))

# a deliberately refutable schema: everyone permitted everything
print()
rep = check_schema("p_5", cfg)
print("p_5", rep.verdict)
model, instance, state = rep.countermodel
print("refuted instance:", print_formula(instance))
print("fails at state:", state)
print("the countermodel, fully serialized:")
print(save(model).decode().rstrip())

# replaying the refutation is one extension call
assert state not in extension(model, instance)
print("refutation replayed")
