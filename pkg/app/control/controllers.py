def first_order_control(x_i: float, xhat0_i: float, uhat0_i: float, k1: float) -> float:
    """u_i = -k1 (x_i - xhat0_i) + uhat0_i."""
    return -k1 * (x_i - xhat0_i) + uhat0_i


def second_order_control(
    x_i: float,
    xhat0_i: float,
    vhat_i: float,
    vhat0_i: float,
    uhat0_i: float,
    k1: float,
    k2: float,
) -> float:
    """u_i = -k1 (x_i - xhat0_i) - k2 (vhat_i - vhat0_i) + uhat0_i."""
    return -k1 * (x_i - xhat0_i) - k2 * (vhat_i - vhat0_i) + uhat0_i
