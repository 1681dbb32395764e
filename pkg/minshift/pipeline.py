# -*- coding: utf-8 -*-

import traceback
from concurrent.futures import ThreadPoolExecutor
from contextlib import ExitStack

from .exceptions import CellsFailedException, HarnessException, MinshiftException
from .streamers import InfoStreamer


class Cell(object):
    """ A cell is one independent unit of an experiment (a dataset x family x method x replication, ...).
        Call do to compute its report rows.
        The cell function takes no parameter and returns a list of rows (dicts).
        Every cell has a name and identifying keys, copied in the error row if the cell fails.

        You can wrap the cell function with context managers ! You have access to the cell object inside the context
        manager, and to its rows once the cell function has returned.
        @contextmanager
        def wall_time(cell):
            began = time.perf_counter()
            yield  # cell function runs here
            for row in cell.rows:
                row["wall_time"] = time.perf_counter() - began

        To get info on what is being done, set a streamer object with set_info_streamer.
        A streamer is an object that exposes one method: send_info. See streamers.py.
    """

    def __init__(self, cell_fct, name=None, keys=None):
        """ Construct a cell.
        Args:
            cell_fct (function): called by do(), without parameters. Returns a list of rows.
            name (str): name used in logs. Defaults to the keys joined by "/".
            keys (dict): identifying columns of the cell's rows.
        """
        self._context_managers = []
        self._cell_fct = cell_fct
        self.keys = dict(keys or {})
        self.name = name or "/".join(str(value) for value in self.keys.values()) or repr(cell_fct)
        self.rows = []
        self.info_streamer = InfoStreamer()

    def notify(self, step, **kwargs):
        """ Notify what happened to the info streamer
        Args:
            step (str): "begin" or "end"
            kwargs: extra info to send.
        """
        kwargs["cell_name"] = self.name
        kwargs[step] = True
        self.info_streamer.send_info(**kwargs)

    def do(self):
        """ Enter every context manager in order, then call the cell function. """
        self.notify("begin")
        try:
            with ExitStack() as stack:
                for ctx_manager_gen in reversed(self._context_managers):
                    stack.enter_context(ctx_manager_gen(self))
                self.rows = list(self._cell_fct())
            self.notify("end", rows=len(self.rows))
            return self.rows
        except Exception as exc:
            self.notify("end", exc=exc)
            raise

    def error_row(self, exc):
        row = dict(self.keys)
        row["error"] = "{}: {}".format(type(exc).__name__, exc)
        return row

    def add_context_manager(self, context_manager):
        """ Add a context manager around the cell function.
        Context managers are nested: the last one added is the outermost.
        Args:
            context_manager (callable): takes the cell and returns a context manager.
        """
        self._context_managers.append(context_manager)

    def set_info_streamer(self, info_streamer):
        """ Set an info streamer to have info on what has been done. See streamers.py.
        Args:
            info_streamer (InfoStreamer): an object with a send_info method.
        """
        if not callable(getattr(info_streamer, "send_info", None)):
            raise HarnessException("info_streamer must have a send_info method.")
        self.info_streamer = info_streamer


class CellsPipeline(object):
    """ Runs a list of cells and concatenates their rows, in cell order.

    A cell raising a MinshiftException contributes its error row and the run goes on. Other exceptions propagate.
    If every cell failed, CellsFailedException is raised with all the tracebacks.
    With workers > 1 the cells run on a thread pool. Rows are still collected in cell order.
    """

    def __init__(self, cells=None, name=None, workers=1):
        self._cells = []
        self.name = name
        self.workers = max(1, int(workers))
        self.info_streamer = InfoStreamer()
        for cell in cells or []:
            self.append(cell)

    @property
    def cells(self):
        return list(self._cells)

    def append(self, cell):
        if not hasattr(cell, "do") or not hasattr(cell, "set_info_streamer"):
            raise HarnessException("cell should inherit from Cell.")
        self._cells.append(cell)
        cell.set_info_streamer(self.info_streamer)

    def set_info_streamer(self, info_streamer):
        """ The info streamer is shared by every cell of the pipeline. """
        if not callable(getattr(info_streamer, "send_info", None)):
            raise HarnessException("info_streamer must have a send_info method.")
        self.info_streamer = info_streamer
        for cell in self._cells:
            cell.set_info_streamer(info_streamer)

    @staticmethod
    def _run_cell(cell):
        try:
            return cell.do(), None
        except MinshiftException as exc:
            return [cell.error_row(exc)], traceback.format_exc()

    def run(self):
        """ Returns the rows of every cell. """
        if self.workers > 1 and len(self._cells) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                outcomes = list(executor.map(self._run_cell, self._cells))
        else:
            outcomes = [self._run_cell(cell) for cell in self._cells]
        failures = [failure for _, failure in outcomes if failure is not None]
        if self._cells and len(failures) == len(self._cells):
            raise CellsFailedException(
                "Every cell of {} failed.".format(self.name or "the pipeline"), failures
            )
        return [row for rows, _ in outcomes for row in rows]
