"""Resource classes grouped under :class:`ladderlcu.Simulator`."""
