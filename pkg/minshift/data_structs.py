# -*- coding: utf-8 -*-

"""
Available data structures:
    * Sample: an immutable batch of observations with cached summary statistics.
    * ParamVector: an immutable parameter vector of a distribution family.
"""

import numpy as np

from .exceptions import InvalidSampleError


class ParamVector(tuple):
    """ Ordered parameter values of a family, in the family's parameter order.

    A ParamVector may hold values outside the family's parameter box: it is up to the family to flag it invalid
    (see distributions.Family.is_valid).

    Examples:
        >>> theta = ParamVector([2, 1])
        >>> theta
        ParamVector(2.0, 1.0)
        >>> theta + ParamVector([3])  # plain tuple concatenation
        (2.0, 1.0, 3.0)
    """

    def __new__(cls, values=()):
        return super(ParamVector, cls).__new__(cls, (float(v) for v in values))

    def __repr__(self):
        return "ParamVector({})".format(", ".join(repr(v) for v in self))


class Sample(object):
    """ An immutable batch of real observations. Order of the values is preserved.

    min, mean and sd (Bessel-corrected, 0 for a single observation) are computed once at construction.

    Examples:
        >>> s = Sample([4, 5, 6])
        >>> s.n, s.min, s.mean, s.sd
        (3, 4.0, 5.0, 1.0)
        >>> s.shifted(4).values
        array([0., 1., 2.])
    """

    def __init__(self, values):
        values = np.array(values, dtype=float).ravel()
        if values.size < 1:
            raise InvalidSampleError("A sample needs at least one value.")
        if not np.all(np.isfinite(values)):
            raise InvalidSampleError("A sample can only hold finite values.")
        values.flags.writeable = False
        self._values = values
        self.n = int(values.size)
        self.min = float(values.min())
        self.mean = float(values.mean())
        self.sd = float(values.std(ddof=1)) if self.n > 1 else 0.0

    @property
    def values(self):
        return self._values

    def shifted(self, c):
        """ Returns the sample x - c. """
        return Sample(self._values - c)

    def subsample(self, size, rng):
        """ Draw `size` values without replacement.
        Args:
            size (int): size of the subsample, at most n.
            rng (numpy.random.Generator): source of randomness.
        """
        if not 1 <= size <= self.n:
            raise InvalidSampleError(
                "Subsample size {} out of range [1, {}]".format(size, self.n)
            )
        idx = np.sort(rng.choice(self.n, size=size, replace=False))
        return Sample(self._values[idx])

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self._values)

    def __repr__(self):
        return "Sample(n={}, min={!r}, mean={!r}, sd={!r})".format(
            self.n, self.min, self.mean, self.sd
        )
