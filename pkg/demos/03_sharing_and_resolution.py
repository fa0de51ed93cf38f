"""
Sharing acts, round trips, and full resolution
==============================================

A share [a>b] refines only the receiver, only inside the receiver's
current information cell.  Chaining shares forward and backward pools a
whole group; resolving information instead hands everyone the group
meet in one stroke.  The two do not coincide.
"""

from knowpool import apply_sequence, check, parse, pointed
from knowpool.presets import overlap, service_desk

pm = pointed(service_desk())

# single shares give the customer one server's classification
print("[a>c]K{c}(p->q):", bool(check(pm, parse("[a>c]K{c}(p->q)"))))
print("[b>c]K{c}(q->r):", bool(check(pm, parse("[b>c]K{c}(q->r)"))))

# after hearing from both servers the customer's cell at s0 collapses
both = apply_sequence(pm, [("a", "c"), ("b", "c")])
cells = " | ".join("{%s}" % ",".join(sorted(c))
                   for c in both.model.cells("c"))
print("c after two shares:", cells)

# a leader-led pool: the leader shares along the chain, so everyone
# ends up knowing what the leader knew, and nothing more
print()
print("Rk{a;a,b,c}E{a,b,c}(p->q):",
      bool(check(pm, parse("Rk{a;a,b,c}E{a,b,c}(p->q)"))))
print("Rk{a;a,b,c}E{a,b,c}(q->r):",
      bool(check(pm, parse("Rk{a;a,b,c}E{a,b,c}(q->r)"))))

# the full round trip pools all three classifications
round_trip = ("Rk{a,b,c}(E{a,b,c}(p->q) & E{a,b,c}(q->r)"
              " & E{a,b,c}(p->r))")
print("round trip pools everything:", bool(check(pm, parse(round_trip))))

# on a model where the agents' cells overlap, resolving information
# is strictly stronger than a round of knowledge sharing
pm2 = pointed(overlap())
print()
print("Ri{a,b}E{a,b}(p & q & r):",
      bool(check(pm2, parse("Ri{a,b}E{a,b}(p & q & r)"))))
print("Rk{a,b}E{a,b}p:", bool(check(pm2, parse("Rk{a,b}E{a,b}p"))))
print("Rk{a,b}E{a,b}q:", bool(check(pm2, parse("Rk{a,b}E{a,b}q"))))
