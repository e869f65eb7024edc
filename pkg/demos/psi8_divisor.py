"""Reading a divisor off a principal part with negative coefficients.

The weight-8 product on U + U(2) + A1(2) has six cosets at q^(-1/8) with
coefficient -1.  Their multiplicity picks up +1 from the q^(-1/2) term at
twice the coset, so they cancel and only the two remaining terms survive.

Run with ``python3 demos/psi8_divisor.py``.
"""

from reflex.dataset import load_dataset
from reflex.product import divisor_multiplicity, reflective_divisor

ds = load_dataset("u_u2_a1_2")
pc = ds.candidate("Psi_8")
pp = pc.principal_part

for term in pp.terms:
    for v in term.cosets:
        m = divisor_multiplicity(pp, v, term.exponent)
        print(f"q^{term.exponent}  coeff {term.coefficient:+d}  {v}  ->  multiplicity {m}")

rd = reflective_divisor(pc)
print("\nreflective divisors:", [(str(rc.coset), f"d={rc.d}") for rc in rd.classes])
print("cancelled:", len(rd.cancelled), " non-reflective:", len(rd.non_reflective))
