#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Run the markovrotor command line interface.

:copyright: (c) 2026 by the markovrotor authors.
:license: MIT, see LICENSE for more details.
"""

import sys

from .cli import main

sys.exit(main())
