"""Equilibrium (trim) search by damped Newton iteration."""
import numpy as np

from ..errors import TrimError
from ..numerics import solve

TRIM_TOL = 1e-10


def find_equilibrium(plant, u_fixed=None, x_guess=None, tol=TRIM_TOL,
                     max_iter=100, fd_options=None):
    """Solve f(x, u_fixed) = 0 for x, starting from ``x_guess``.

    The Jacobian is re-estimated by central differences every iteration.
    Raises SingularMatrixError when the Jacobian is numerically singular
    (e.g. plants with pure-integrator states) and TrimError when
    ``max_iter`` iterations do not bring the residual below ``tol``.
    """
    from ..linearize import fd_jacobian

    u = plant.u_nom if u_fixed is None else np.asarray(u_fixed, dtype=np.float64)
    x = plant.x_nom.copy() if x_guess is None else np.array(x_guess, dtype=np.float64)
    if x.shape != (plant.n_states,):
        raise TrimError(f"x_guess has shape {x.shape}, expected ({plant.n_states},)")

    def residual(z):
        return np.asarray(plant.f(z, u), dtype=np.float64)

    r = residual(x)
    best = float(np.max(np.abs(r)))
    for _ in range(max_iter):
        if best <= tol:
            return x
        jac = fd_jacobian(residual, x, fd_options)
        dx = solve(jac, -r)
        # backtrack until the residual drops
        lam = 1.0
        for _ in range(30):
            x_new = x + lam * dx
            r_new = residual(x_new)
            norm_new = float(np.max(np.abs(r_new)))
            if np.isfinite(norm_new) and norm_new < best:
                break
            lam *= 0.5
        else:
            raise TrimError(f"line search stalled at residual {best:.3e}",
                            residual=best, x_best=x)
        x, r, best = x_new, r_new, norm_new
    if best <= tol:
        return x
    raise TrimError(f"no convergence in {max_iter} iterations "
                    f"(best residual {best:.3e})", residual=best, x_best=x)
