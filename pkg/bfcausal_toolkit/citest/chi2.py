"""Chi-square upper tail probability."""

from scipy.special import gammaincc

from ..errors import InvalidDofError


def chi_square_survival(x: float, dof: int) -> float:
    """
    P(chi^2_dof > x), the regularized upper incomplete gamma Q(dof/2, x/2).

    Parameters:
    -----------
    x : float
        Statistic, x >= 0
    dof : int
        Degrees of freedom, dof >= 1

    Returns:
    --------
    float
        Survival probability in [0, 1]
    """
    if int(dof) != dof or dof < 1:
        raise InvalidDofError(f"Degrees of freedom must be an integer >= 1, got {dof}")
    if x < 0:
        raise ValueError(f"Chi-square statistic must be non-negative, got {x}")
    if x == 0:
        return 1.0
    return float(gammaincc(dof / 2.0, x / 2.0))
