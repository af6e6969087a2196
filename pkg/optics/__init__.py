from .beam_splitter import BeamSplitterSpec, beam_splitter_matrix, beam_splitter_apply
from .sources import SourceSpec, prepare_heralded_photon, make_epr, vacuum
from .loss import loss_channel, binomial_element_map
