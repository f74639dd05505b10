"""What an extremal index buys: maxima, hitting times, cluster sizes.

Uses a max-autoregressive sequence whose extremal index is known exactly,
so every prediction can be checked against simulation.
"""
import numpy as np

import netei as ne

delta, theta, n = 1.2, 0.5, 10_000
a = (1 - theta) ** (1 / delta)
b = theta ** (1 / delta)
rng = np.random.default_rng(0)


def armax(size):
    z = (-np.log(rng.random(size + 1))) ** (-1 / delta)
    x = np.empty(size)
    prev = z[0]
    for t in range(size):
        prev = max(a * prev, b * z[t + 1])
        x[t] = prev
    return x


x = armax(200_000)
print(f"intervals plateau {ne.intervals_sweep(x).plateau.value:.3f} (true {theta})")

# median of the maximum of n samples
maxima = [armax(n).max() for _ in range(200)]
print(f"median max {np.median(maxima):.0f}, predicted {ne.largest_degree_estimate(1.0, delta, n, theta):.0f}, "
      f"ignoring dependence {ne.largest_degree_estimate(1.0, delta, n, 1.0):.0f}")

# clusters at a high threshold
u = np.quantile(x, 0.99)
cl = ne.cluster_size_distribution(ne.exceedance_stats(x, u))
print(f"mean cluster size {cl.mean:.2f}, 1/theta = {ne.mean_cluster_size(theta):.2f}")
print("cluster size pmf", {k: round(v, 3) for k, v in cl.pmf.items() if v > 0.01})

# first hitting of a level exceeded with probability 1/m per step
m = 500
level = (-np.log(1 - 1 / m)) ** (-1 / delta)
times = [ne.first_hitting_time(armax(40 * m), level) or 40 * m for _ in range(300)]
print(f"mean T/m {np.mean(times) / m:.2f}, predicted {ne.expected_hitting_fraction(theta, 1.0):.2f}")
