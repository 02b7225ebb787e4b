"""
Relations in a graph algebra
============================

Build the two-loop graph, write elements as strings, and decide equalities
through the gauge normal form.
"""

# the graph: one vertex v and two loops e1, e2
from mwalgebra.graph import cantor_graph
from mwalgebra.algebra import AlgebraElement, equals, normal_form, tau
from mwalgebra.expr import parse, to_string
from mwalgebra.pathspace import CylinderFn

g = cantor_graph()
print(g)

# s_e^* s_e is the projection at the source of e
x = parse(g, "s(e1)^* * s(e1)")
print("s(e1)^* s(e1) =", to_string(x), equals(x, AlgebraElement.p(g, "v")))

# the range projections of the two loops add up to p_v, but neither one alone does
print(normal_form(parse(g, "p(v)"), 1))
print(equals(parse(g, "s(e1)*s(e1)^*"), parse(g, "p(v)")))

# products follow the contraction rule; mixed words cancel
y = parse(g, "s(e2)^* * s(e1)")
print("s(e2)^* s(e1) =", to_string(y))

# tau turns cylinder indicators into range projections
f = CylinderFn.indicator(g, "e1 e2")
print("tau(chi[e1 e2]) =", to_string(tau(f)))

# and pulling back along an edge is conjugation by that edge
print(equals(tau(f.pullback_shift("e1")), AlgebraElement.s(g, "e1").adjoint() * tau(f) * AlgebraElement.s(g, "e1")))
