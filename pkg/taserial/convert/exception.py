class ConversionError(Exception):

    def __init__(self, payload, reason):
        super().__init__(reason)
        self.payload = payload
        self.reason = reason
