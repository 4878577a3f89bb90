# Copyright (c) Opendatalab. All rights reserved.
import json
import os

from loguru import logger


# absolute, or relative to the home directory
CONFIG_FILE_NAME = os.getenv('HYPERSHIFT_TOOLS_CONFIG_JSON', 'hypershift.json')


def config_file_path():
    if os.path.isabs(CONFIG_FILE_NAME):
        return CONFIG_FILE_NAME
    home_dir = os.path.expanduser('~')
    return os.path.join(home_dir, CONFIG_FILE_NAME)


def read_config():
    config_file = config_file_path()
    if not os.path.exists(config_file):
        return None
    with open(config_file, 'r', encoding='utf-8') as f:
        config = json.load(f)
    return config


def _get_section(name):
    config = read_config()
    if config is None:
        return None
    section = config.get(name, None)
    if section is None:
        logger.debug(f"'{name}' not found in {CONFIG_FILE_NAME}, use 'None' as default")
    return section


def get_sweep_config():
    """Section ``sweep``: keys ``grid``, ``burn``, ``iters``."""
    return _get_section('sweep')


def get_refine_config():
    """Section ``refine``: key ``modes``."""
    return _get_section('refine')


def get_tolerance_config():
    """Section ``tolerance``: key ``state``."""
    return _get_section('tolerance')


def get_jobs(jobs):
    jobs_env = os.getenv('HYPERSHIFT_JOBS')
    jobs = jobs if jobs_env is None else int(jobs_env)
    return max(1, jobs)


def get_burn(burn):
    burn_env = os.getenv('HYPERSHIFT_BURN')
    return burn if burn_env is None else int(burn_env)


def get_log_level():
    return os.getenv('HYPERSHIFT_LOG_LEVEL', 'WARNING').upper()
