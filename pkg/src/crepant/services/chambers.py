import logging
from typing import Any, Dict, Optional, Tuple

from ..domain.arrangements import (
    Arrangement, build_A, build_B, localize, positive_orthant, region_count,
    region_count_in_C0, region_count_in_cone,
)
from ..domain.errors import ConfigError, PreconditionError
from ..domain.ports import Executor
from ..domain.region_counting import RegionCount
from ..domain.values import Rational, format_rational, parse_rational
from ..persistence.json_io import load_arrangement

logger = logging.getLogger(__name__)

CONES = ("F", "C0")


def parse_ray(text: str) -> Tuple[Rational, ...]:
    """ "1,1,1/2" -> (1, 1, 1/2) """
    try:
        return tuple(parse_rational(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"--at-ray expects comma-separated rationals, got {text!r}")


class ChamberService:
    """ Region and chamber counts of the arrangements A(n), B(n, m) or a custom one. """

    def __init__(self, executor: Executor):
        self.executor = executor

    def arrangement(self, name: Optional[str], n: Optional[int] = None, m: Optional[int] = None,
                    normals_file: Optional[str] = None) -> Arrangement:
        if normals_file is not None:
            try:
                return load_arrangement(normals_file)
            except OSError as e:
                raise ConfigError(f"cannot read --normals-file {normals_file}: {e.strerror or e}") from e
        if n is None:
            raise ConfigError("--n is required unless --normals-file is given")
        if name == "A":
            return build_A(n)
        if name == "B":
            return build_B(n, m if m is not None else n // 2)
        raise ConfigError(f"unknown arrangement {name!r}; expected A or B")

    def count(self, name: Optional[str], n: Optional[int] = None, m: Optional[int] = None,
              in_cone: Optional[str] = None, at_ray: Optional[str] = None,
              method: str = "enumerate", normals_file: Optional[str] = None) -> Dict[str, Any]:
        """ One count: all regions, regions in F or C0, or chambers around a ray. """
        if in_cone is not None and at_ray is not None:
            raise ConfigError("--in-cone and --at-ray are exclusive")
        if in_cone is not None and in_cone not in CONES:
            raise ConfigError(f"unknown cone {in_cone!r}; expected one of {', '.join(CONES)}")
        a = self.arrangement(name, n, m, normals_file)
        context: Dict[str, Any] = {"arrangement": name if normals_file is None else normals_file,
                                   "dim": a.dim, "hyperplanes": len(a)}
        if in_cone == "C0":
            if name != "A" or normals_file is not None:
                raise ConfigError("--in-cone C0 is only defined for the arrangement A")
            result = region_count_in_C0(a.dim, method, self.executor)
            context["in_cone"] = in_cone
        elif in_cone == "F":
            result = region_count_in_cone(a, positive_orthant(a.dim), method, self.executor)
            context["in_cone"] = in_cone
        elif at_ray is not None:
            theta = parse_ray(at_ray)
            try:
                local = localize(a, theta)
            except PreconditionError as e:
                raise ConfigError(str(e))
            result = region_count(local, method, self.executor)
            context["at_ray"] = [format_rational(t) for t in theta]
            context["through_ray"] = len(local)
        else:
            result = region_count(a, method, self.executor)
        logger.info("chambers count %s: %d", context, result.regions)
        return {**self._result(result), **context}

    @staticmethod
    def _result(result: RegionCount) -> Dict[str, Any]:
        out: Dict[str, Any] = {"regions": result.regions, "method": result.method}
        if result.primes:
            out["primes"] = list(result.primes)
            out["polynomial"] = list(result.polynomial)
        return out
