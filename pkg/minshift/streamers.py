# -*- coding: utf-8 -*-

"""
Streamers are classes that take infos from fits or experiment cells and log them.
"""

import logging
import traceback

logger = logging.getLogger("minshift")


class InfoStreamer(object):
    """ Interface for streamers """

    def send_info(self, **kwargs):
        pass


class HumanReadableLogger(InfoStreamer):
    """ Streamer that logs for humans.

    Understands two kinds of events:
        * fits: ``fit_name`` with ``begin``/``end``, optionally ``diverged``, ``loglik`` and ``n_evals``.
        * experiment cells: ``cell_name`` with ``begin``/``end``, optionally ``rows`` and ``exc``.
    """

    def send_info(self, **kwargs):
        log_txt = []
        if "fit_name" in kwargs:
            log_txt.append(self._step_word(kwargs))
            log_txt.append("fit {fit_name}")
            if kwargs.get("diverged"):
                log_txt.append("(diverged)")
            elif "loglik" in kwargs:
                log_txt.append("with loglik {loglik:.6g}")
            if "n_evals" in kwargs:
                log_txt.append("after {n_evals} evaluations")
        elif "cell_name" in kwargs:
            log_txt.append(self._step_word(kwargs))
            log_txt.append("cell {cell_name}")
            if "rows" in kwargs:
                log_txt.append("({rows} rows)")
        if "exc" in kwargs:
            log_txt.append("- Exception: {exc}: {traceback}")
            kwargs["traceback"] = traceback.format_exc()

        if not log_txt:
            return
        message = " ".join(log_txt).format(**kwargs)
        if "exc" in kwargs or kwargs.get("diverged"):
            logger.warning(message)
        else:
            logger.info(message)

    @staticmethod
    def _step_word(kwargs):
        if "begin" in kwargs:
            return "Start of"
        if "exc" in kwargs:
            return "Failure of"
        return "End of"
