"""Derive the planar polynomial flow for a few families, exactly.

Every family here carries invariant metrics with three positive
coefficients (x, y, z), normalized to the simplex x + y + z = 1.  The
Ricci flow on those coefficients, cleared of denominators and projected
to the (x, y) plane, becomes a polynomial vector field with integer
coefficients.  All of that is computed in rational arithmetic; nothing
below is a float.
"""

from flagricci import family_from_id, projected_field


def show(family):
    field = projected_field(family)
    print(f"{family.group_name} / {family.isotropy_name}")
    print(f"  summand dimensions: {family.dims}, total {family.total_dim}")
    print(f"  degree {max(field.u.degree(), field.v.degree())},"
          f" largest coefficient {field.scale:.0f}")
    print(f"  u = {field.u.to_text()}")
    print(f"  v = {field.v.to_text()}")
    print()


if __name__ == "__main__":
    show(family_from_id("su", (2, 1, 1)))
    show(family_from_id("so", (6,)))
    show(family_from_id("g2u2"))
    # the exceptional full flag with all summand dimensions equal behaves
    # exactly like the smallest unitary one
    e6 = projected_field(family_from_id("e6so8u1u1"))
    su = projected_field(family_from_id("su", (1, 1, 1)))
    print("E6 full flag field equals the SU(1,1,1) field:",
          e6.u == su.u and e6.v == su.v)
