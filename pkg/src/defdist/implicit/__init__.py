from defdist.implicit.bordered import build_K, build_M
from defdist.implicit.evaluate import (
    IterateState,
    F_alphabeta,
    assemble_G,
    assemble_g,
    evaluate_f_and_gradient,
    evaluate_jacobian,
    reflect_epsilon,
)
from defdist.implicit.newton import (
    ConvergenceRecord,
    InitialGuess,
    NewtonSettings,
    ProblemInstance,
    initialize,
    newton_solve,
)
