# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

commands = {
    'valuate': {
        'name': 'Valuations and bounded sets',
        'info': 'valuation families of F_p[t, 1/P, ...] and elements bounded below'
    },
    'building': {
        'name': 'Buildings of SL(n)',
        'info': 'balls in the tree, isometry certificates, stabilizers'
    },
    'decompose': {
        'name': 'Commuting families',
        'info': 'simultaneous block decomposition and block determinants'
    },
    'classify': {
        'name': 'Element classification',
        'info': 'finite order, unipotent, virtually unipotent or other'
    },
    'split': {
        'name': 'Direct factors',
        'info': 'split a free abelian subgroup off a finitely generated abelian group'
    },
    'distortion': {
        'name': 'Word metrics',
        'info': 'word length, translation length estimates, abelian distortion'
    },
    'fixtures': {
        'name': 'Fixture groups',
        'info': 'list and show the built-in groups'
    },
    'config': {
        'name': 'Configuration',
        'info': 'show or save the caps and seed'
    },
}

aliases = {
    'enumerate': 'valuate',
    'tree': 'building',
    'blocks': 'decompose',
    'words': 'distortion',
}

categories = {
    'Valuations and buildings': ['valuate', 'building'],
    'Linear algebra': ['decompose', 'classify', 'split'],
    'Word metrics': ['distortion'],
    'Other': ['fixtures', 'config'],
}


def get_command_info(command):
    return commands[aliases.get(command, command)]
