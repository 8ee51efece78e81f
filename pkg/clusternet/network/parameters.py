"""Network state containers."""

from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from clusternet.network.layers import LayerCache
from clusternet.network.spec import NetworkSpec

ParameterGradients = Dict[str, np.ndarray]


@dataclass
class AdamState:
    """First/second moment accumulators per parameter tensor and the step count."""

    first_moment: Dict[str, np.ndarray] = field(default_factory=dict)
    second_moment: Dict[str, np.ndarray] = field(default_factory=dict)
    step: int = 0


@dataclass
class NetworkParameters:
    """Encoder and decoder tensors keyed ``"<side>.<layer>.<weight|bias>"``."""

    spec: NetworkSpec
    tensors: Dict[str, np.ndarray]
    adam: AdamState = field(default_factory=AdamState)

    def keys_for(self, side: str) -> List[str]:
        """Parameter keys of ``"encoder"`` or ``"decoder"``."""
        return [key for key in self.tensors if key.startswith(f"{side}.")]

    def copy(self) -> "NetworkParameters":
        """Deep copy, optimizer state included."""
        return NetworkParameters(
            spec=self.spec,
            tensors={k: v.copy() for k, v in self.tensors.items()},
            adam=AdamState(
                first_moment={k: v.copy() for k, v in self.adam.first_moment.items()},
                second_moment={
                    k: v.copy() for k, v in self.adam.second_moment.items()
                },
                step=self.adam.step,
            ),
        )


@dataclass
class ForwardTrace:
    """Per-layer caches of one encoder or decoder pass."""

    side: str
    caches: List[LayerCache]

    def __len__(self) -> int:
        return len(self.caches)
