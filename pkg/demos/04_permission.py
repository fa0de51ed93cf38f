"""
Permissible ways of knowing
===========================

An ideal relation O marks which epistemic transitions are acceptable.
An agent is in the clear (Ok) while some accessible state is ideally
related to the actual one; P{a} adds knowledge on top.  Each single
share below is fine, but their composition strips the customer of
every acceptable alternative: anonymity is lost only in combination.
"""

from knowpool import check, parse, pointed
from knowpool.lab import compare_readings
from knowpool.presets import service_desk_deontic

m = service_desk_deontic()
pm = pointed(m)

print("ideal pairs:", sorted(tuple(sorted(p)) for p in m.ideal))
print()

# either server may brief the customer on its own
print("[a>c]P{c}(p->q):", bool(check(pm, parse("[a>c]P{c}(p->q)"))))
print("[b>c]P{c}(q->r):", bool(check(pm, parse("[b>c]P{c}(q->r)"))))

# both briefings together identify the user: no acceptable way of
# knowing remains, so the pooled knowledge is not permitted
print("[a>c][b>c]Ok{c}:", bool(check(pm, parse("[a>c][b>c]Ok{c}"))))
print("[a>c][b>c]P{c}(p->r):",
      bool(check(pm, parse("[a>c][b>c]P{c}(p->r)"))))

# permission to share is permission for the receiver afterwards;
# after a's briefing, b's follow-up is already off the table
print("Perm(a>c):", bool(check(pm, parse("Perm(a>c)"))))
print("[a>c]Perm(b>c):", bool(check(pm, parse("[a>c]Perm(b>c)"))))

# the Ok clause can be read two ways: keeping an ideal transition at
# the actual state, or merely considering some ideal state possible.
# They disagree exactly on the stacked shares above.
print()
print("fact        transition  possibility")
for row in compare_readings():
    print("%-10s  %-10s  %s" % (row.label, row.transition, row.possibility))
