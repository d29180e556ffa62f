"""Print the uncatalogued A3 entry together with every check it passes."""

from smoothsym.classify import enumerate_picard_one
from smoothsym.colored import (
    ampleness_checks,
    completeness_witness,
    is_ample_two_orbit,
    off_shared_divisor,
    picard_counts,
    validate_colored_fan,
)
from smoothsym.exactlin import lattice_index
from smoothsym.scf import document_from, print_scf
from smoothsym.symmcheck import smoothness_conditions, toric_is_smooth, toric_slice


def main() -> None:
    for e in enumerate_picard_one("A3"):
        if not e.label.startswith("uncatalogued"):
            continue
        d, f = e.datum, e.fan
        print(e.describe())
        print("index of the root lattice in chi:", lattice_index(d.root_system.root_lattice, d.chi))
        print("fan valid:", bool(validate_colored_fan(d, f)))
        print("complete:", completeness_witness(d, f) is None)
        for cc in f.maximal_cones:
            print("cone", cc, "conditions:", smoothness_conditions(d, cc).smooth,
                  "toric slice:", toric_is_smooth(d, toric_slice(d, cc)))
        print("r, m, l =", picard_counts(d, f))
        coeffs = off_shared_divisor(d, f)
        for c in ampleness_checks(d, f, coeffs):
            print(f"  cone {c.cone_index + 1}: l({', '.join(map(str, c.generator))}) = {c.linear_value} vs {c.phi_value}")
        print("ample:", is_ample_two_orbit(d, f, coeffs))
        print()
        print(print_scf(document_from(d, f.maximal_cones, ["# A3 two-orbit, chi of index two over Q"])))


if __name__ == "__main__":
    main()
