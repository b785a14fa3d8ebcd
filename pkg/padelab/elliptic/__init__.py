"""
Strong asymptotic model on the genus one surface of w for non-real
parameters.
"""

from padelab.elliptic.jip import JIPSolution, JIPSolver, jip_solve
from padelab.elliptic.model import (SurfaceModel, eval_Psi, eval_Psi_star,
        model_QR_complex)
from padelab.elliptic.periods import (PeriodData, abel_map, compute_periods,
        eval_A_sigma, eval_Phi)
from padelab.elliptic.sheets import PathLibrary, SurfacePoint
from padelab.elliptic.szego import SurfaceSzego, build_surface_szego
from padelab.elliptic.theta import theta
