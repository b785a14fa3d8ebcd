#!python3

"""
Exceptions raised by the laboratory.

Every numerical failure is reported through a subclass of PadeLabError so the
command line front end can log it and exit cleanly. Bad settings and bad
arguments raise ValueError like everywhere else in the code base.
"""

# Definitions aka constants
QUADRATURE_FAILED_MSG = ("Quadrature did not converge after %d nodes, last "
                        "two estimates %s and %s")
NEWTON_FAILED_MSG = ("Newton iteration stopped after %d iterations with "
                    "residual %s")
SINGULAR_JACOBIAN_MSG = "Jacobian is singular at %s"
DEGENERATE_SYSTEM_MSG = ("Homogeneous system has a kernel of dimension %d, "
                        "the solution is not unique")
INSUFFICIENT_COEFFICIENTS_MSG = ("Type (%d,%d) needs germs of order %d but "
                                "only order %d is available")
PRECISION_MSG = ("Non-finite or inaccurate value in %s, increase the "
                "working precision")
BRANCH_MSG = "Branch choice is ambiguous: %s"
GEOMETRY_MSG = "Arc %s did not land on its endpoint, last point %s"
BOUNDARY_MSG = "Point %s lies on the compact (distance %s)"
CLASS_VIOLATION_MSG = "Weight is outside its class: %s"
PATH_MSG = "No admissible integration path to %s"
ORIENTATION_MSG = "Period B = %s has non-positive imaginary part"
JIP_MSG = "Jacobi inversion for n = %d is ambiguous: %s"
INDEX_SELECTION_MSG = "n = %d is not in N_eps for eps = %s"
CONSISTENCY_MSG = "Internal consistency check failed: %s"


class PadeLabError(Exception):
    '''
    Base class of every numerical failure
    '''


class QuadratureError(PadeLabError):
    '''
    A quadrature did not reach the requested tolerance

    The last two estimates are kept so callers can judge how far off they are.
    '''
    def __init__(self, nodes, previous, last):
        PadeLabError.__init__(self, QUADRATURE_FAILED_MSG % (nodes, previous, last))
        self.nodes = nodes
        self.previous = previous
        self.last = last


class NewtonError(PadeLabError):
    '''
    Newton iteration failed to reach the residual tolerance
    '''
    def __init__(self, iterations, residual, message = None):
        if message is None:
            message = NEWTON_FAILED_MSG % (iterations, residual)
        PadeLabError.__init__(self, message)
        self.iterations = iterations
        self.residual = residual


class SingularJacobianError(NewtonError):
    def __init__(self, point):
        NewtonError.__init__(self, 0, None, SINGULAR_JACOBIAN_MSG % (point,))
        self.point = point


class DegenerateSystemError(PadeLabError):
    '''
    A homogeneous system has more than one independent solution

    The kernel basis is attached so that callers may pick a member.
    '''
    def __init__(self, basis):
        PadeLabError.__init__(self, DEGENERATE_SYSTEM_MSG % len(basis))
        self.basis = basis


class InsufficientCoefficientsError(PadeLabError):
    def __init__(self, n1, n2, needed, available):
        PadeLabError.__init__(self, INSUFFICIENT_COEFFICIENTS_MSG %
                (n1, n2, needed, available))


class PrecisionError(PadeLabError):
    def __init__(self, where):
        PadeLabError.__init__(self, PRECISION_MSG % where)


class BranchError(PadeLabError):
    def __init__(self, detail):
        PadeLabError.__init__(self, BRANCH_MSG % detail)


class GeometryError(PadeLabError):
    def __init__(self, label, last_point):
        PadeLabError.__init__(self, GEOMETRY_MSG % (label, last_point))
        self.label = label
        self.last_point = last_point


class BoundaryError(PadeLabError):
    def __init__(self, z, distance):
        PadeLabError.__init__(self, BOUNDARY_MSG % (z, distance))
        self.z = z
        self.distance = distance


class ClassViolationError(PadeLabError):
    def __init__(self, detail):
        PadeLabError.__init__(self, CLASS_VIOLATION_MSG % detail)


class PathError(PadeLabError):
    def __init__(self, target):
        PadeLabError.__init__(self, PATH_MSG % (target,))


class OrientationError(PadeLabError):
    def __init__(self, B):
        PadeLabError.__init__(self, ORIENTATION_MSG % (B,))


class JIPError(PadeLabError):
    def __init__(self, n, detail):
        PadeLabError.__init__(self, JIP_MSG % (n, detail))


class IndexSelectionError(PadeLabError):
    def __init__(self, n, eps):
        PadeLabError.__init__(self, INDEX_SELECTION_MSG % (n, eps))
        self.n = n
        self.eps = eps


class ConsistencyError(PadeLabError):
    def __init__(self, detail):
        PadeLabError.__init__(self, CONSISTENCY_MSG % detail)
