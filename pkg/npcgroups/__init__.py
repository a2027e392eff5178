# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

__author__    = 'npcgroups contributors'
__copyright__ = 'Copyright (c) 2026 npcgroups contributors'
__license__   = 'MIT'
__version__   = '1.0'
