import sys
import numpy as np

# Defaults shared by the library and the command line front end
params = {
    # State and noise
    "phi": np.pi,
    "visibility": 1.,
    "k": 1,
    # Sweeps
    "t_min": 0.01,
    "t_max": 0.99,
    "steps": 99,
    # Optimizer
    "grid_step": 0.005,
    "golden_tolerance": 1e-6,
    "bisection_tolerance": 1e-4,
    # Numerics
    "zero_tolerance": 1e-12,
    "normalization_tolerance": 1e-12,
    # Simulated counting
    "counts": 10 ** 5,
    "seed": 0,
    "max_seed": 2 ** 64,
    # Local hidden variable enumeration
    "max_strategies": 2 ** 24,
}

# Execution params such as number of processes
exec_params = {
    "worker_processes": 1,
}


def print_config(file=None):
    if file is None:
        file = sys.stdout
    print("==========configs==========", file=file)
    for k, v in params.items():
        print("{}: {}".format(k, v), file=file)
    print("==========exec config=================", file=file)
    for k, v in exec_params.items():
        print("{}: {}".format(k, v), file=file)
