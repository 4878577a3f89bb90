from .eigen import ZETA_LABELS, EigenStructure, build_eigenstructure
from .homological import (KILL_ORDER, NormalFormReport, NormalFormResult, QuadraticKill, WeakStabilityVerdict,
                          conjugated_jet, cubic_normal_form, kill_name, predicted_radius, run_pipeline,
                          solve_quadratic_kill, transformed_field, weak_stability_verdict)
from .reference import (ALPHA1, NU_RESONANT, Discrepancy, cross_check, reference_g1, reference_kill,
                        reference_p_terms, require_agreement)
from .transcript import render_transcript
