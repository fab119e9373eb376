import numpy as np

FD_STEP = 1e-6


def random_points(seed, count, low, high):
    rng = np.random.default_rng(seed)
    return [tuple(p) for p in rng.uniform(low, high, size=(count, 2)).tolist()]


def finite_difference_jacobian(planar_map, p, step=FD_STEP):
    """
    Central differences, rows are components
    """
    x, y = p
    right, left = planar_map.evaluate((x + step, y)), planar_map.evaluate((x - step, y))
    up, down = planar_map.evaluate((x, y + step)), planar_map.evaluate((x, y - step))
    return np.array([
        [(right[0] - left[0]) / (2 * step), (up[0] - down[0]) / (2 * step)],
        [(right[1] - left[1]) / (2 * step), (up[1] - down[1]) / (2 * step)],
    ])
