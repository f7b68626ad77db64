"""scikit-learn style wrappers around the generators.

``fit`` learns what generation needs from an observed graph (its degree
sequence, and for TCL the transitivity ``rho``); ``generate`` and
``sample`` draw new graphs. Parameters follow the usual conventions, so
``get_params``/``set_params``/``clone`` work as for any estimator.

>>> model = TransitiveChungLu(random_state=0).fit(edges)   # doctest: +SKIP
>>> synthetic = model.generate()                           # doctest: +SKIP
"""
import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._random import as_generator, derive_rng
from .fitting import EmConfig, fit_rho
from .generators import GenMetrics, GenParams, _fast_cl_work, _max_attempts, _tcl_work
from .graph import PiSampler
from .validation import check_graph, check_positive_int, check_rho


class _DegreeModel(BaseEstimator):

    def _fit_degrees(self, X):
        g = check_graph(X)
        self.n_nodes_ = g.n_nodes
        self.n_edges_ = g.n_edges
        self.degrees_ = np.array(g.degrees)
        self.labels_ = g.labels
        self.sampler_ = PiSampler(self.degrees_)
        return g

    def _streams(self, random_state):
        seed = self.random_state if random_state is None else random_state
        if seed is None or isinstance(seed, np.random.Generator):
            rng = as_generator(seed)
            return rng, rng
        return derive_rng(seed, "warmup"), derive_rng(seed, "replacement")

    def sample(self, n_samples=1, random_state=None):
        """Draw ``n_samples`` independent graphs.

        Returns
        -------
        list of (Graph, GenMetrics)
        """
        check_is_fitted(self, "degrees_")
        seed = self.random_state if random_state is None else random_state
        master = derive_rng(seed, "sample") if isinstance(seed, (int, np.integer)) else as_generator(seed)
        return [self.generate(random_state=child, return_metrics=True) for child in master.spawn(n_samples)]


class ChungLu(_DegreeModel):
    """Fast Chung-Lu generator.

    Parameters
    ----------
    corrected : bool, default=True
        Re-pair the endpoints of rejected placements before drawing fresh
        start nodes. ``False`` reproduces the naive, degree-biased variant.
    max_attempts : int, optional
        Attempt budget before ``GraphTooDense``; defaults to ``100 * M``.
    random_state : int, Generator or None
    """

    def __init__(self, corrected=True, max_attempts=None, random_state=None):
        self.corrected = corrected
        self.max_attempts = max_attempts
        self.random_state = random_state

    def fit(self, X, y=None):
        check_positive_int(self.max_attempts, "max_attempts")
        self._fit_degrees(X)
        return self

    def generate(self, random_state=None, return_metrics=False):
        check_is_fitted(self, "degrees_")
        rng, _ = self._streams(random_state)
        metrics = GenMetrics()
        params = GenParams(max_attempts=self.max_attempts)
        work = _fast_cl_work(self.n_nodes_, self.sampler_, self.n_edges_, rng, self.corrected,
                             _max_attempts(params, self.n_edges_), metrics)
        g = work.to_graph(labels=self.labels_)
        return (g, metrics) if return_metrics else g

    def fit_generate(self, X, y=None):
        return self.fit(X).generate()


class TransitiveChungLu(_DegreeModel):
    """Transitive Chung-Lu generator with an EM-fitted transitivity.

    Parameters
    ----------
    rho : float in [0, 1] or "auto", default="auto"
        Probability that a new edge closes a two-hop path. ``"auto"``
        learns it from the training graph.
    iterations : int, optional
        Edge replacements after the Chung-Lu warmup; defaults to ``M``.
    samples_per_iteration, max_em_iter, tol, rho_init
        EM settings, see ``EmConfig``.
    max_attempts : int, optional
    random_state : int, Generator or None

    Attributes
    ----------
    rho_ : float
        Transitivity used for generation.
    em_trace_ : EmTrace or None
        Convergence record when ``rho="auto"``.
    degrees_ : ndarray
        Degree sequence of the training graph.
    """

    def __init__(self, rho="auto", iterations=None, samples_per_iteration=10_000,
                 max_em_iter=100, tol=1e-3, rho_init=0.5, max_attempts=None, random_state=None):
        self.rho = rho
        self.iterations = iterations
        self.samples_per_iteration = samples_per_iteration
        self.max_em_iter = max_em_iter
        self.tol = tol
        self.rho_init = rho_init
        self.max_attempts = max_attempts
        self.random_state = random_state

    def fit(self, X, y=None):
        rho = check_rho(self.rho)
        check_positive_int(self.max_attempts, "max_attempts")
        g = self._fit_degrees(X)
        if rho == "auto":
            cfg = EmConfig(samples_per_iteration=self.samples_per_iteration,
                           max_iterations=self.max_em_iter, tolerance=self.tol,
                           rho_init=self.rho_init)
            seed = self.random_state
            rng = derive_rng(seed, "fit") if isinstance(seed, (int, np.integer)) else as_generator(seed)
            self.em_trace_ = fit_rho(g, cfg, rng)
            self.rho_ = self.em_trace_.rho_final
        else:
            self.em_trace_ = None
            self.rho_ = rho
        return self

    def generate(self, random_state=None, return_metrics=False):
        """Draw one TCL graph; same seed, same graph."""
        check_is_fitted(self, "rho_")
        warm, rep = self._streams(random_state)
        params = GenParams(rho=self.rho_, iterations=self.iterations, max_attempts=self.max_attempts)
        work, metrics = _tcl_work(self.n_nodes_, self.sampler_, self.n_edges_, params, warm, rep)
        g = work.to_graph(labels=self.labels_)
        return (g, metrics) if return_metrics else g

    def fit_generate(self, X, y=None):
        return self.fit(X).generate()
