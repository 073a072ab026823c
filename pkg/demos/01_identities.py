"""Exact identities: the Faraday bivector squared, and what a sign slip looks like.

Run: python3 demos/01_identities.py
"""
from gaproca.algebra import MINKOWSKI, EUCLIDEAN, pseudoscalar
from gaproca.symbolic import Scope, canonicalize, parse, verify_identity

scope = Scope(MINKOWSKI)
scope.declare("relvector", "E")
scope.declare("relvector", "B")
scope.let("F", "E + i B")

print("Unit pseudoscalar squares:")
for alg in (MINKOWSKI, EUCLIDEAN):
    i = pseudoscalar(alg)
    print(f"  {alg}: i i = {i * i}")

print("\nF F splits into a scalar and a pseudoscalar invariant:")
print("  F F =", canonicalize(parse("F F", scope), scope))

print("\nThe energy density needs the adjoint, not the reverse:")
for text in ("<F adj(F)>_0", "<F rev(F)>_0"):
    print(f"  {text} =", canonicalize(parse(text, scope), scope))

print("\nA quarter-turn duality rotation maps (E, B) to (B, -E):")
rep = verify_identity(parse("F duality(1/2)", scope), parse("B - i E", scope), scope)
print("  F exp(-i pi/2) == B - i E :", rep.equal)
rep = verify_identity(parse("F duality(1/2)", scope), parse("-(B - i E)", scope), scope)
print("  ...and the sign-flipped claim is rejected:", not rep.equal)
