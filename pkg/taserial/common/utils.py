def layer(*settings):
    """
    Layer dictionaries of settings, later ones win. ``None`` dictionaries and ``None`` values are skipped,
    so unset command line flags never hide a manifest value or a default.

    :return dict: the layered settings
    """
    layered = {}
    for d in settings:
        layered.update({k: v for k, v in (d or {}).items() if v is not None})
    return layered
