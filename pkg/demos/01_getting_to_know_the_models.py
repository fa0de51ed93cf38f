"""
A first look at epistemic models
================================

Two servers and a customer track three facts about a user database.
Server a can tell whether the data respects the access rule p -> q,
server b whether it respects q -> r, and the customer c cannot tell
the five candidate situations apart at all.
"""

from knowpool import check, parse, pointed
from knowpool.presets import service_desk

m = service_desk()

# the model is a plain finite structure: states, per-agent partitions
# of indistinguishable states, and a valuation
print("states:", ", ".join(m.states))
for agent in m.agents:
    cells = " | ".join("{%s}" % ",".join(sorted(c)) for c in m.cells(agent))
    print("agent %s sees: %s" % (agent, cells))
for s in m.states:
    print("valuation %s: {%s}" % (s, ",".join(sorted(m.val[s]))))

# the designated point s0 is the actual situation
pm = pointed(m)
print()
for text in ("K{a}(p->q)", "K{a}(q->r)", "K{b}(q->r)", "K{c}(p->q)"):
    print("%-12s %s" % (text, bool(check(pm, parse(text)))))

# pooling everyone's observations would settle every question at once
print()
for text in ("D{a,b,c}p", "D{a,b,c}q", "D{a,b,c}r", "D{a,b}(p->r)"):
    print("%-14s %s" % (text, bool(check(pm, parse(text)))))

# a false knowledge claim comes with a counter-state the agent
# cannot rule out
res = check(pm, parse("K{a}(q->r)"))
print()
print("a cannot rule out %s, where q holds but r fails" % res.witness)
