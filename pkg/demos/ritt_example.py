"""x^5 - y^5 + z*(x*y' - y*x')^2: differential homogeneity, the factorization
of x^5 - y^5 over Q(zeta) and membership of the remainder in [x - zeta*y]^2."""

from dab.cli import load_catalog, ritt_suite
from dab.problem import parse_problem

if __name__ == "__main__":
    prob = parse_problem(load_catalog("ritt.dab"))
    print("f =", prob.polys["f"])
    verdict, checks = ritt_suite(prob)
    print("homogeneity degree:", checks["homogeneity_degree"]["value"])
    print("x^5 - y^5 = prod (x - zeta^k y):", checks["fifth_roots_factorization"]["identity"])
    mem = checks["preparation_membership"]
    print(f"g = {mem['g']}")
    print(f"g in [{mem['gen']}]^2 (order <= 1, degree <= 5): {mem['member']}")
    for w in mem["witness"]:
        ths = " * ".join(f"D{t}(h)" for t in w["derivatives"])
        print(f"    ({w['coefficient']}) * {w['multiplier']} * {ths}")
    print("components:", checks["components"]["status"])
    print("verdict:", verdict)
