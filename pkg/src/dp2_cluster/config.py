# -*- coding: utf-8 -*-

"""
config reads the packaged config.yaml and layers user overrides on top.

Steps:
1- Read the packaged defaults
2- Merge an optional user file section by section
3- Resolve the fixture root (DP2_FIXTURE_DIR wins over the file)
"""

import os

import yaml

PACKAGE_DIR = os.path.dirname(os.path.abspath(__file__))
DEFAULT_CONFIG = os.path.join(PACKAGE_DIR, 'config.yaml')
FIXTURE_ENV = 'DP2_FIXTURE_DIR'


# Helpers --------------------------------------------------------------------------------------------------------------
def load_yaml (configpath: str) -> dict:
    '''
    Given file path, Read yaml file
    :param configpath:
    :return: config_dict
    '''
    with open(configpath) as file:
        config_dict = yaml.load(file, Loader=yaml.FullLoader)
    return config_dict or {}


def merge_sections (base: dict, override: dict) -> dict:
    merged = {key: dict(value) if isinstance(value, dict) else value for key, value in base.items()}
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key].update(value)
        else:
            merged[key] = value
    return merged


# Main -----------------------------------------------------------------------------------------------------------------
def load_config (configpath: str = None) -> dict:
    '''
    Packaged defaults, then the user file, then the environment
    :param configpath: optional user yaml
    :return: config
    '''
    config = load_yaml(DEFAULT_CONFIG)
    if configpath:
        config = merge_sections(config, load_yaml(configpath))
    fixture_meta = config['fixture_meta']
    if not fixture_meta.get('fixture_dir'):
        fixture_meta['fixture_dir'] = os.path.join(PACKAGE_DIR, 'data')
    if os.environ.get(FIXTURE_ENV):
        fixture_meta['fixture_dir'] = os.environ[FIXTURE_ENV]
    return config


def fixture_path (config: dict, key: str) -> str:
    '''
    :param config:
    :param key: one of tiling_file, effects_file, cases_dir
    :return: path under the fixture root
    '''
    fixture_meta = config['fixture_meta']
    return os.path.join(fixture_meta['fixture_dir'], fixture_meta[key])
