"""Integrate orbits of the flow and watch the Lyapunov function fall.

Forward orbits converge to attracting Einstein metrics; backward orbits
run into repellers.  Along the way the scale-invariant Lyapunov value
decreases strictly, which is the mechanism ruling out periodic orbits.
"""

from flagricci import family_from_id, integrate_orbit, limit_of_orbit, projected_field


def trace(field, start, direction="forward"):
    traj = integrate_orbit(field, start, direction=direction)
    out = traj.terminal
    first = traj.samples[0]
    last = traj.samples[-1]
    print(f"  start ({start[0]:.3f}, {start[1]:.3f}) {direction:8s}"
          f" -> {out.kind} {out.label or '':2s}"
          f" at ({out.position[0]:.6f}, {out.position[1]:.6f})"
          f"  t={out.time_elapsed:.1f}  steps={len(traj.samples) - 1}")
    if out.kind == "Equilibrium":
        print(f"    L: {first[3]:.6f} -> {last[3]:.6f}"
              f"  (distance to equilibrium {out.distance:.1e})")


if __name__ == "__main__":
    su = family_from_id("su", (2, 1, 1))
    field = projected_field(su)
    print(f"{su.group_name} / {su.isotropy_name}")
    trace(field, (0.49, 0.49))
    trace(field, (0.30, 0.25))
    trace(field, (0.05, 0.05), direction="backward")
    print()

    g2 = family_from_id("g2u2")
    field = projected_field(g2)
    print(f"{g2.group_name} / {g2.isotropy_name}")
    trace(field, (1 / 6 + 0.01, 1 / 3 - 0.01))
    trace(field, (0.40, 0.40))
    print()

    # limit_of_orbit is the one-call version
    out = limit_of_orbit(projected_field(su), (0.2, 0.3))
    print(f"limit_of_orbit su(2,1,1) from (0.2, 0.3): {out.label}")
