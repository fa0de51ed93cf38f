"""
Knowledge that leans on someone else
====================================

K{b|a} reads: b would know, relying on what a knows right now.  It sits
strictly between b's own knowledge and the distributed knowledge of the
pair, and it is exactly what a single act of sharing can deliver.
"""

from knowpool import check, dep_closure, dep_partition, parse, pointed
from knowpool.presets import service_desk

m = service_desk()
pm = pointed(m)

# what a's information at s0 amounts to, as a set of states: the
# closure contains every state compatible with all of a's knowledge
print("a's closure at s0:", sorted(dep_closure(m, "a", "s0")))
print("b's closure at s0:", sorted(dep_closure(m, "b", "s0")))

# the closure induces a partition: inside it, a's knowledge is silent;
# outside it, only definable distinctions remain
parts = dep_partition(m, "a", "s0")
print("a's dependence classes at s0:",
      " | ".join("{%s}" % ",".join(sorted(c)) for c in parts))

# the customer draws on one server, then on both
print()
for text in ("K{c}(p->q)", "K{c|a}(p->q)", "K{c|a}(q->r)",
             "K{c|a,b}(p->q)", "K{c|a,b}(q->r)", "K{c|a,b}(p->r)"):
    print("%-18s %s" % (text, bool(check(pm, parse(text)))))

# a self-defeating report: c, drawing on a, can classify the rule AND
# see that c alone does not know it.  Actually sharing destroys the
# second conjunct, so the dependent claim does not survive the share.
print()
moore = "K{c|a}((p->q) & ~K{c}(p->q))"
print("%-38s %s" % (moore, bool(check(pm, parse(moore)))))
print("%-38s %s" % ("[a>c]" + moore,
                    bool(check(pm, parse("[a>c]" + moore)))))
after = "[a>c]K{c|a}((p->q) & K{c}(p->q))"
print("%-38s %s" % (after, bool(check(pm, parse(after)))))
