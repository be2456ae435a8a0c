"""Physical constants shared across the simulator."""

SPEED_OF_LIGHT = 299792458.0        # m/s
BOLTZMANN = 1.380649e-23            # J/K
EARTH_GM = 3.986004418e14           # m^3/s^2, gravitational parameter G*M
DEFAULT_EARTH_RADIUS_KM = 6378.0
