from padiz.client import Padiz
from padiz.potts_bethe import PottsBetheMap
