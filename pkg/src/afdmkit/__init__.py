"""Off-diagonal cosmological metrics from anholonomic frame deformations.

Subpackages
-----------
fieldkit
    Expression DSL, jet (value + exact partials) evaluation, quadrature,
    a 2-D Poisson solver and an adaptive ODE initial-value integrator.
nageometry
    N-adapted differential geometry: coordinate metrics from d-metric data,
    Levi-Civita and canonical d-connection objects, torsion, Ricci tensors
    and Einstein-equation residuals.
afdm
    The solution generator: torsionful and Levi-Civita off-diagonal
    cosmological metrics from generating data, plus constraint checks.
cosmodyn
    Background cosmology: Big Rip law, coupled dark-energy / dark-matter
    evolution, effective FLRW residuals, e-folding maps.
reconstruct
    Curvature-functional reconstruction: effective sources, the
    hypergeometric and Euler ordinary differential equations, power-law
    models and residual evaluators.
stability
    Matter-instability diagnostics: trace background, damped-oscillator
    criterion, perturbation evolution, divergence residuals.
cli
    Scenario ingestion, dispatch and report emission.
"""

__version__ = "0.1.0"
