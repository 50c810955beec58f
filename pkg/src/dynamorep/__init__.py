"""Trajectory-based classification of black-box optimization problems.

The package runs four population-based optimizers (DE, GA, ES, CMA-ES) on the
24 BBOB problem classes, turns every run into a fixed-length vector of
per-iteration population statistics (the DynamoRep representation), computes a
pooled-sample ELA baseline, and trains random-forest classifiers to recover
the problem class from a single run under two seed-generalization settings.

Subpackages map one-to-one onto the pipeline stages:

- ``bbob``         the 24 function classes with seeded instance transforms
- ``optimizers``   DE / GA / (mu+lambda)-ES / CMA-ES with trajectory logging
- ``features``     DynamoRep per-iteration statistics
- ``ela``          pooled-trajectory ELA features and feature elimination
- ``forest``       random-forest classifier with gini importances
- ``experiments``  stratified folds, the two settings, reports
- ``cli``          subcommands generate / featurize / evaluate / report / all
"""

__version__ = "0.1.0"
