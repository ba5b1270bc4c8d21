from entlab.errors import (EntlabError, ParseError, ContractError, ArgumentError, SizeError,
                           NotDistillableError, NumericalError, FilterFailure)
from entlab.tensor_core import DensityMatrix, PureState, PartitionSpec, SchmidtData
from entlab.states import StateRecipe
from entlab.separability import Verdict, CriterionReport, WitnessOperator, battery
from entlab.measures import MeasureValue, SloccClass, measure
from entlab.nonlocality import BellSettings, CorrelationTensor
from entlab.locc import LocalFilter, KrausChannel, DistillationTrace
from entlab.state_io import parse_state, read_state, write_state, ReportDocument
from entlab import tensor_core, states, separability, measures, nonlocality, locc

__version__ = '1.0'
