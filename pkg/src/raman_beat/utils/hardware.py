"""
Host and numeric-stack detection for worker pool sizing and run reports.
"""
import logging
import os
import platform
from typing import Optional

import numpy as np
import pandas as pd
import scipy

logger = logging.getLogger(__name__)


class HardwareInfo:
    """Host capabilities relevant to a simulation run."""

    def __init__(
        self,
        cpu_count: int,
        worker_threads: int,
        python_version: str,
        numpy_version: str,
        scipy_version: str,
        pandas_version: str,
        blas: Optional[str] = None,
    ):
        self.cpu_count = cpu_count
        self.worker_threads = worker_threads
        self.python_version = python_version
        self.numpy_version = numpy_version
        self.scipy_version = scipy_version
        self.pandas_version = pandas_version
        self.blas = blas

    def __repr__(self) -> str:
        return (
            f"HardwareInfo(cpus={self.cpu_count}, workers={self.worker_threads}, "
            f"numpy={self.numpy_version}, scipy={self.scipy_version})"
        )

    def to_dict(self) -> dict:
        return {
            "cpu_count": self.cpu_count,
            "worker_threads": self.worker_threads,
            "python_version": self.python_version,
            "numpy_version": self.numpy_version,
            "scipy_version": self.scipy_version,
            "pandas_version": self.pandas_version,
            "blas": self.blas,
        }


class HardwareDetector:
    """
    Detects the CPU budget and numeric library versions.
    """

    @staticmethod
    def detect_cpu_count() -> int:
        """Usable CPUs, honouring process affinity where the platform exposes it."""
        if hasattr(os, "sched_getaffinity"):
            try:
                return max(1, len(os.sched_getaffinity(0)))
            except OSError:
                pass
        return max(1, os.cpu_count() or 1)

    @staticmethod
    def detect_blas() -> Optional[str]:
        """Name of the BLAS numpy was built against, when numpy reports it."""
        try:
            config = np.show_config(mode="dicts")
        except TypeError:
            return None
        try:
            return config["Build Dependencies"]["blas"]["name"]
        except (KeyError, TypeError):
            return None

    @classmethod
    def select_workers(cls, requested: Optional[int] = None) -> int:
        """
        Worker pool size: the requested count capped at the CPU count.

        :param requested: Desired pool size; None uses every CPU
        """
        cpus = cls.detect_cpu_count()
        if requested is None:
            return cpus
        if requested > cpus:
            logger.warning(f"Requested {requested} workers but only {cpus} CPUs; using {cpus}")
            return cpus
        return max(1, requested)

    @classmethod
    def detect_all(cls, requested_workers: Optional[int] = None) -> HardwareInfo:
        return HardwareInfo(
            cpu_count=cls.detect_cpu_count(),
            worker_threads=cls.select_workers(requested_workers),
            python_version=platform.python_version(),
            numpy_version=np.__version__,
            scipy_version=scipy.__version__,
            pandas_version=pd.__version__,
            blas=cls.detect_blas(),
        )

    @classmethod
    def log_hardware_info(cls, hardware_info: Optional[HardwareInfo] = None) -> None:
        """
        Log host information for run reproducibility.

        :param hardware_info: Optional HardwareInfo object. If None, will detect.
        """
        if hardware_info is None:
            hardware_info = cls.detect_all()

        info = hardware_info.to_dict()
        logger.info("Hardware Detection Results:")
        logger.info(f"  CPUs: {info['cpu_count']}")
        logger.info(f"  Worker threads: {info['worker_threads']}")
        logger.info(f"  Python: {info['python_version']}")
        logger.info(f"  numpy {info['numpy_version']}, scipy {info['scipy_version']}, "
                    f"pandas {info['pandas_version']}")
        if info["blas"]:
            logger.info(f"  BLAS: {info['blas']}")
