"""First-passage and hitting laws for one-dimensional stable processes.

Submodules
----------
specfun      gamma, Gauss hypergeometric 2F1, endpoint-singular quadrature
stable       parameter validation, characteristic exponent, increment sampler
lamperti     exponents of the Lamperti process xi and Lamperti-stable subordinators
wiener_hopf  Wiener-Hopf factors, ladder and renewal densities
hitting      closed-form hitting, overshoot and potential densities
montecarlo   path simulation for cross-checking the closed forms
validation   self-check suites used by the command line
cli          ``stablepassage`` command
"""

__version__ = "0.1.0"
