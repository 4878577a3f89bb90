# Copyright (c) Opendatalab. All rights reserved.
import hashlib
import json


def dict_md5(d):
    json_str = json.dumps(d, sort_keys=True, ensure_ascii=False, default=str)
    return hashlib.md5(json_str.encode('utf-8')).hexdigest()


def config_fingerprint(cfg) -> str:
    """Short digest of a RunConfig, written into output headers."""
    return dict_md5(cfg.model_dump(mode='json', exclude={'out'}))[:12]
