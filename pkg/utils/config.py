"""
Budget configuration for searches, Gröbner completion and closures.
"""

import os
from typing import Any, Dict, Mapping, Optional

from pydantic import BaseModel, Field

ENV_PREFIX = "ORE_"


class KernelConfig(BaseModel):
    """Resource budgets shared by all algorithms.

    Every field can be overridden through an environment variable named
    after it in upper case with the ``ORE_`` prefix.
    """

    model_config = {"frozen": True}

    budget_degree: int = Field(
        12, gt=0, description="Total-degree bound for witness searches"
    )
    budget_exponent: int = Field(
        12, gt=0, description="Exponent bound for powers and theta shifts"
    )
    gb_pair_limit: int = Field(2000, gt=0, description="Buchberger pair budget")
    factor_bound: int = Field(
        10**6, gt=1, description="Trial-division bound for integer factorization"
    )
    search_node_limit: int = Field(
        20000, gt=0, description="Node budget of factor and witness searches"
    )
    max_closure_rounds: int = Field(
        8, gt=0, description="Schedule repetitions of the closure driver"
    )
    brute_force_limit: int = Field(
        100000, gt=0, description="Enumeration cap of brute-force checks"
    )

    @classmethod
    def from_env(
        cls,
        environ: Optional[Mapping[str, str]] = None,
        **overrides: Optional[int],
    ) -> "KernelConfig":
        """Build a config from ``ORE_*`` variables, then explicit overrides.

        Overrides whose value is None are ignored, so CLI options that were
        not given fall through to the environment.
        """
        env = os.environ if environ is None else environ
        values: Dict[str, Any] = {}
        for name in cls.model_fields:
            raw = env.get(f"{ENV_PREFIX}{name.upper()}")
            if raw is not None and raw.strip():
                values[name] = raw.strip()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


DEFAULT_CONFIG = KernelConfig()
