"""Xarray backend for altroute instance files."""

from __future__ import annotations

import os
from collections.abc import Iterable
from typing import TYPE_CHECKING, Any

from xarray.backends import BackendEntrypoint

from ._format_utils import detect_instance_kind
from .reader import open_instance_dataset

if TYPE_CHECKING:
    from xarray.core.dataset import Dataset

INSTANCE_EXTENSIONS = (".alt", ".txt")


class AltrouteBackendEntrypoint(BackendEntrypoint):
    """Xarray backend for reading red/blue point instances.

    Examples
    --------
    >>> import xarray as xr
    >>> ds = xr.open_dataset("square.alt", engine="altroute")
    >>> ds = xr.open_dataset("points.txt", engine="altroute", convex=True)
    """

    description = "Open red/blue point instance files (altroute format) in xarray"
    url = "https://github.com/your-org/altroute"

    open_dataset_parameters = ("convex",)

    def open_dataset(  # type: ignore[override]
        self,
        filename_or_obj: str | os.PathLike[Any],
        *,
        drop_variables: str | Iterable[str] | None = None,
        convex: bool = False,
    ) -> Dataset:
        """Open an instance file as a Dataset along dimension ``point``.

        Parameters
        ----------
        filename_or_obj : str or PathLike
            Instance file.
        drop_variables : str or iterable of str, optional
            Variables to drop from the dataset.
        convex : bool, default False
            Reorder point records into clockwise convex order.

        Returns
        -------
        Dataset
            Coordinates, colours, hull membership and run ids.
        """
        path = str(filename_or_obj) if isinstance(filename_or_obj, os.PathLike) else filename_or_obj
        ds = open_instance_dataset(path, convex=convex)

        if drop_variables is not None:
            ds = ds.drop_vars(drop_variables)

        return ds

    def guess_can_open(self, filename_or_obj: str | os.PathLike[Any] | Any) -> bool:
        """Guess whether this backend can open the given file.

        ``.alt`` files always qualify; ``.txt`` files only when their first data
        line looks like an instance.
        """
        if not isinstance(filename_or_obj, str | os.PathLike):
            return False
        path_str = str(filename_or_obj)
        _, ext = os.path.splitext(path_str)
        if ext == ".alt":
            return True
        if ext not in INSTANCE_EXTENSIONS or not os.path.isfile(path_str):
            return False
        with open(path_str, encoding="utf-8", errors="replace") as fh:
            head = fh.read(4096)
        return detect_instance_kind(head) in ("points", "convex")
