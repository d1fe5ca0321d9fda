"""Exact normalized rates on the line-clique and line-star graphs for rho = 0..3."""

import argparse

from subnetsched.cliques import temp_graph
from subnetsched.generators import line_clique, line_star
from subnetsched.metrics import alpha_aggressive_ratio, alpha_aggressive_sum, alpha_conservative, alpha_dc
from subnetsched.selection import aggressive_centralized, conservative_select


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=20)
    ap.add_argument("--max-rho", type=int, default=3)
    args = ap.parse_args()
    print(f"{'graph':<12} {'rho':>3} {'dc':>6} {'conservative':>13} {'agg ratio':>10} {'agg sum':>10}")
    for name, build in (("line_clique", line_clique), ("line_star", line_star)):
        g = build(args.n)
        for rho in range(args.max_rho + 1):
            temp = temp_graph(g, rho)
            agg = aggressive_centralized(temp, g, rho)
            con = conservative_select(temp, g, rho)
            vals = [alpha_dc(g).ideal, alpha_conservative(con).ideal, alpha_aggressive_ratio(agg).ideal, alpha_aggressive_sum(agg).ideal]
            print(f"{name:<12} {rho:>3} " + " ".join(f"{str(v):>{w}}" for v, w in zip(vals, (6, 13, 10, 10))))


if __name__ == "__main__":
    main()
