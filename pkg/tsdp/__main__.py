# (C) Copyright 2024 Enthought, Inc., Austin, TX
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license. The license
# is also available online at http://www.enthought.com/licenses/BSD.txt
#
# Thanks for using Enthought open source!

"""
Entry point for ``python -m tsdp``.
"""
import sys

from tsdp.cli import main

if __name__ == "__main__":
    sys.exit(main())
