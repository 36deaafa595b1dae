"""linspect: linearize black-box plant simulators and audit the resulting
linear models (eigenstructure, deviation from the nonlinear source,
frequency-dependent conditioning, numerical rank loss)."""

__version__ = "0.1.0"
