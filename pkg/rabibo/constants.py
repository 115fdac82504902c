app_configuration_values = {
    "program_name": "rabibo",
    # Truncated Fock basis size used by both solvers.
    "default_n_max": 200,
    # Gauss-Hermite order floor; the effective order is max(floor, 2N+1).
    "min_quad_order": 201,
    "default_n_levels": 10,
    "default_grid": {"xi_min": -8.0, "xi_max": 8.0, "points": 801},
    "default_concurrency": 4,
    # Truncation sizes of the convergence command.
    "default_sizes": [50, 100, 150, 200],
    "float_digits": 17,
    # Populations below this floor are dropped before fitting.
    "population_floor": 1e-12,
    "fit_max_iterations": 5000,
    "fit_tolerance": 1e-12,
    "min_fit_points": 4,
}


class AppConfiguration:
    def __init__(self, config):
        self._config = config

    def __getitem__(self, key):
        return self._config[key]

    def __setitem__(self, key, value):
        self._config[key] = value

    def __contains__(self, key):
        return key in self._config

    def __repr__(self):
        return str(self._config)


app_configuration = AppConfiguration(app_configuration_values)


def default_quad_order(n_max: int) -> int:
    return max(app_configuration["min_quad_order"], 2 * n_max + 1)
