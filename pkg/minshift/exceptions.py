# -*- coding: utf-8 -*-


class MinshiftException(Exception):
    pass


class DistributionException(MinshiftException):
    pass


class InvalidThetaError(DistributionException):
    pass


class UnknownFamilyError(DistributionException):
    pass


class RegistryError(DistributionException):
    pass


class DegenerateTruncationError(DistributionException):
    pass


class DivergentIntegralError(DistributionException):
    pass


class EstimatorException(MinshiftException):
    pass


class InvalidSampleError(EstimatorException):
    pass


class InsufficientSampleError(EstimatorException):
    pass


class RequiresPositiveSupportError(EstimatorException):
    pass


class InvalidNuError(EstimatorException):
    pass


class InvalidLogBaseError(EstimatorException):
    pass


class OrderStatsException(MinshiftException):
    pass


class InvalidQuantileError(OrderStatsException):
    pass


class InvalidNormalizerError(OrderStatsException):
    pass


class FitException(MinshiftException):
    pass


class InvalidMethodError(FitException):
    pass


class DivergedFitError(FitException):
    pass


class HarnessException(MinshiftException):
    pass


class ParseError(HarnessException):
    def __init__(self, msg, line=None):
        super(ParseError, self).__init__(msg, line)
        self.msg = msg
        self.line = line

    def __str__(self):
        if self.line is None:
            return self.msg
        return "line {}: {}".format(self.line, self.msg)


class EmptyFileError(HarnessException):
    pass


class ConfigError(HarnessException):
    pass


class CellsFailedException(HarnessException):
    def __init__(self, msg, exceptions_tracebacks):
        super(CellsFailedException, self).__init__(msg)
        self.exceptions_tracebacks = exceptions_tracebacks
        self.msg = msg

    def __str__(self):
        return "\n".join(
            [self.msg, "Exceptions encountered in order:"] + self.exceptions_tracebacks
        )


class NegativeEstimateWarning(UserWarning):
    pass
