# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

from .field import *
from .matrix import *
from .parse import *
from .poly import *
from .ratfunc import *
