# SPDX-License-Identifier: Apache-2.0
#
# Copyright 2026 The rismiso Authors
"""RIS-assisted MISO beamforming under Rician fading."""

from ._rismiso import *  # noqa: F401,F403
from ._rismiso import __doc__  # noqa: F401

__version__ = "0.1.0"
