# measure name, what the exact integral is taken against
measures = (
    ("gaussian", "standard Gaussian measure on R^n"),
    ("sphere", "Haar probability measure on the unit sphere S^{n-1}"),
)

# stream id of the Monte Carlo sampler in benchmarks, far away from the trial streams 0, 1, ...
MONTE_CARLO_STREAM = 1 << 32
