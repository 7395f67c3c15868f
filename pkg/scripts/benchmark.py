import time
from statistics import mean, stdev

from wywitness.criteria import evaluate_all
from wywitness.matcore import random_density
from wywitness.syntax import parse_observable

a, b = parse_observable("XY"), parse_observable("YX")

times = []

for seed in range(500):
    rho = random_density(4, seed=seed)
    start = time.process_time()
    evaluate_all(rho, a, b)
    end = time.process_time()
    times.append(end - start)

avg_time = mean(times)
standard_deviation = stdev(times)

print(
    f"Average process execution time: {avg_time * 1000:.2f} "
    f"+/- {standard_deviation * 1000:.2f} ms"
)
