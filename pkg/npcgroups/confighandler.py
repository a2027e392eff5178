# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

from configparser import ConfigParser
from logging import getLogger
from os import environ, makedirs
from os.path import expanduser, isdir, join
from sys import platform

from .errors import MalformedInputError

__all__ = ['get_int', 'get_seed', 'save_config', 'load_defaults', 'config_file', 'SEED_ENV']

log = getLogger(__name__)

CONFIG_FILENAME = 'config.ini'

SEED_ENV = 'NPC_SEED'

home = expanduser('~')

if platform == 'win32':
    config_dir = join(environ.get('APPDATA', home), 'npcgroups')
elif platform == 'darwin':
    config_dir = join(home, 'Library', 'Application Support', 'npcgroups')
else:
    config_root = environ.get('XDG_CONFIG_HOME')
    if not config_root:
        # use an existing npcgroups directory in XDG_CONFIG_DIRS if there is one
        config_roots = environ.get('XDG_CONFIG_DIRS') or '/etc/xdg'
        for path in config_roots.split(':'):
            if isdir(join(path, 'npcgroups')):
                config_root = path
                break
    if not config_root:
        config_root = join(home, '.config')
    config_dir = join(config_root, 'npcgroups')

config_file = join(config_dir, CONFIG_FILENAME)

DEFAULTS = {
    'caps': {
        'bfs_radius': '10',
        'bfs_radius_3gens': '8',
        'tau_n': '16',
        'element_cap': '1000000',
        'search_radius': '6',
        'order_cap': '1000000',
        'bit_limit': '4096',
    },
    'random': {
        'seed': '5132355',
    },
}

parser = ConfigParser()


def load_defaults():
    parser.clear()
    parser.read_dict(DEFAULTS)


def save_config() -> str:
    makedirs(config_dir, exist_ok=True)
    with open(config_file, 'w') as f:
        parser.write(f)
    return config_file


def get_int(section: str, key: str) -> int:
    try:
        return parser.getint(section, key)
    except ValueError:
        raise MalformedInputError(f'{config_file}: [{section}] {key} must be an integer')


def get_seed() -> int:
    """The seed from ``NPC_SEED`` if set, otherwise from the config file."""
    env = environ.get(SEED_ENV)
    if env:
        try:
            return int(env, 0)
        except ValueError:
            raise MalformedInputError(f'{SEED_ENV} must be an integer, got {env!r}')
    return get_int('random', 'seed')


load_defaults()
# the cli never writes the config on its own; "npcgroups config --save" does
loaded = parser.read(config_file)
if loaded:
    log.debug('loaded %s', config_file)
