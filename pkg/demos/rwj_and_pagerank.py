"""How jumps change clustering of extremes.

One graph, then RWJ walks over a range of alpha and PageRank walks over a
range of damping factors.  RWJ is compared with its closed form, PageRank
with the 1 - c lower bound.
"""

import netei as ne

model = ne.JointDegreeModel()
g = ne.generate_graph(model, 5000, 200_000, seed=3).graph

print("alpha  plateau  closed form")
for alpha in (0, 10, 21, 50, 100):
    x = ne.walk(g, ne.SamplerConfig("rwj", 100_000, alpha=alpha, seed=4)).degrees
    est = ne.intervals_sweep(x).plateau.value
    print(f"{alpha:5g}  {est:.3f}    {ne.ei_rwj_pareto(model.gamma, alpha, model.mean_degree):.3f}")

print("\n   c  plateau  bound")
for c in (0.3, 0.5, 0.8, 0.95):
    x = ne.walk(g, ne.SamplerConfig("pr", 100_000, c=c, seed=5)).degrees
    print(f"{c:4.2f}  {ne.intervals_sweep(x).plateau.value:.3f}    {ne.ei_pr_lower_bound(c):.2f}")
