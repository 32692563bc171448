from pathlib import Path
import logging
import json
import os

from .QSPException import QSPGuardError
from .constants import CONFIG_DIR, CONFIG_FILE, REPORT_DIR_ENV, THREADS_ENV, SEED_ENV, DEFAULT_REPORT_DIR, \
    DEFAULT_SEED, DEFAULT_FORMAT, MODE_AUTO, LINEAR_ALGEBRA_MODES, AUTO_EXACT_DIM, SUITE_RELATIONS, \
    SUITE_DUALITY, SUITE_COUNTS, SUITE_OEHMS, SUITE_PROJECTORS, SUITE_TRUNCATE, SUITE_BIMODULE, SUITE_HECKE, \
    SUITE_SERRE
from .reports import envelope
from .utils import dump_json, as_int
from .tensorspace import relation_bg_check, operator_identity_check, hecke_quadratic_check, \
    pairfree_compatibility_check
from .qaction import projector_report, serre_check, bmw_commutation_check
from .bmw import relation_suite, brauer_degeneration_check, star_symmetry_check, faithfulness_check, counts_report
from .centralizer import duality_report, bimodule_dimension_check, hecke_image_check
from .coordalg import oehms_report, pairing_duality_check
from .truncation import diagram_check, commutant_invariance_check

logger = logging.getLogger(__name__)

SETTING_KEYS = ('m', 'n', 'mode', 'prime', 'seed', 'threads', 'report_dir', 'output_format')


class QSPVerifier:
    '''
    Front end for the quantum symplectic verification suites

    Parameters
    ----------
    settings: dict or None (default None)
        Defaults for the verifier. Any subset of:
        {
            'm': default rank,
            'n': default degree,
            'mode': 'exact', 'modp' or 'auto',
            'prime': fixed prime for prime-field runs,
            'seed': seed of the prime-field sampling,
            'threads': worker count,
            'report_dir': where save_report writes,
            'output_format': 'json' or 'text'
        }
    use_cached_settings: bool (default True)
        Fill settings not given explicitly from ~/.qsymplectic/config.json
    cache_settings: bool (default False)
        Write the merged settings back to the config file
    '''

    def __init__(
        self,
        settings: dict | None = None,
        use_cached_settings: bool = True,
        cache_settings: bool = False
    ):

        # Configuration path
        self.config_path = Path(f'{Path.home()}/{CONFIG_DIR}/{CONFIG_FILE}')

        # Explicit settings win over the cache, the cache over the environment
        merged = self._environment_settings()
        if use_cached_settings and self.config_path.exists():
            merged.update(self._load_stored_settings())
        merged.update({k: v for k, v in (settings or {}).items() if v is not None})

        unknown = set(merged) - set(SETTING_KEYS)
        if unknown:
            raise QSPGuardError(f'unknown settings: {sorted(unknown)}')
        if merged['mode'] not in LINEAR_ALGEBRA_MODES:
            raise QSPGuardError(f'mode must be one of {LINEAR_ALGEBRA_MODES}, got {merged["mode"]!r}')
        if as_int(merged['seed'], 'seed') < 0:
            raise QSPGuardError(f'seed must be non-negative, got {merged["seed"]}')

        self.m = merged.get('m')
        self.n = merged.get('n')
        self.mode = merged['mode']
        self.prime = merged.get('prime')
        self.seed = int(merged['seed'])
        self.threads = merged.get('threads')
        self.report_dir = merged['report_dir']
        self.output_format = merged['output_format']

        if cache_settings:
            self._save_settings(self.settings)

    @property
    def settings(self):
        return {key: getattr(self, key) for key in SETTING_KEYS}

    '''
    ###########################################################################
    ######################### Settings Operations ##############################
    ###########################################################################
    '''

    @staticmethod
    def _environment_settings():
        '''
        Defaults from the environment, then from constants.

        This function is not meant to be called by the user directly.
        '''
        threads = os.getenv(THREADS_ENV)
        return {
            'mode': MODE_AUTO,
            'seed': as_int(os.getenv(SEED_ENV, DEFAULT_SEED), SEED_ENV),
            'threads': as_int(threads, THREADS_ENV) if threads else None,
            'report_dir': os.getenv(REPORT_DIR_ENV, DEFAULT_REPORT_DIR),
            'output_format': DEFAULT_FORMAT,
        }

    def _load_stored_settings(self):
        '''
        Loads stored settings from the config file.

        This function is not meant to be called by the user directly.
        '''
        with open(self.config_path, 'r') as f:
            return {k: v for k, v in json.load(f).items() if v is not None}

    def _save_settings(self, settings):
        '''
        Saves settings to the config file.

        This function is not meant to be called by the user directly.
        '''
        self.config_path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.config_path, 'w') as f:
            json.dump(settings, f)

    def purge_settings(self, ask=True):
        '''
        Deletes the file containing cached settings.

        Parameters
        ----------
        ask : bool (default True)
            Whether to ask for confirmation
        '''

        if ask:
            purge = input(
                'Are you sure you want to delete your saved settings? This cannot be undone. (y/n): ').lower() == 'y'
        else:
            purge = True

        if purge:
            if os.path.exists(self.config_path):
                os.remove(self.config_path)
            else:
                print('No settings file found.')

    def _resolve(self, **params):
        '''
        Fill None parameters from the verifier.

        This function is not meant to be called by the user directly.
        '''
        resolved = {}
        for key, value in params.items():
            resolved[key] = getattr(self, key) if value is None else value
            if key in ('m', 'n') and resolved[key] is None:
                raise QSPGuardError(f'{key} was not given and has no stored default')
        return resolved

    @staticmethod
    def _announce(reports, verbose):
        if verbose:
            for report in reports:
                failures = ', '.join(c.name for c in report.failures())
                print(f'{report.name} {report.parameters}: {report.status}' + (f' ({failures})' if failures else ''))
        return reports

    '''
    ###########################################################################
    ######################### Relation Operations ##############################
    ###########################################################################
    '''

    def relations(
        self,
        m: int = None,
        n: int = None,
        verbose: bool = False
    ):
        '''
        The BMW relations for beta', gamma' on V^{(x)n}, the skein identity, the
        operator identities, the q = 1 degeneration and the symmetry of the images.

        >>> from qsymplectic import QSPVerifier
        >>> verifier = QSPVerifier()
        >>> verifier.relations(1, 2)

        Parameters
        ----------
        m: int or None (default None)
            The rank. If not provided, will use verifier settings
        n: int or None (default None)
            Strands, at least 2. If not provided, will use verifier settings
        verbose: bool (default False)
            Whether to print a summary line per report
        '''
        p = self._resolve(m=m, n=n)
        m, n = p['m'], p['n']
        reports = [
            relation_suite(m, n),
            relation_bg_check(m),
            operator_identity_check(m),
            brauer_degeneration_check(m, n),
            star_symmetry_check(m, n),
        ]
        return self._announce(reports, verbose)

    def hecke(
        self,
        m: int = None,
        n: int = None,
        mode: str = None,
        seed: int = None,
        prime: int = None,
        verbose: bool = False
    ):
        '''
        The Hecke operator beta-hat: its quadratic relation, the dimension of the algebra it
        generates and, when m >= n, agreement with beta' on pair-free indices.

        >>> verifier.hecke(2, 2)

        Parameters
        ----------
        m, n: int or None (default None)
            Rank and degree. If not provided, will use verifier settings
        mode: str or None (default None)
            'exact', 'modp' or 'auto'
        seed: int or None (default None)
            Prime-field sampling seed
        prime: int or None (default None)
            Fixed prime
        verbose: bool (default False)
            Whether to print a summary line per report
        '''
        p = self._resolve(m=m, n=n, mode=mode, seed=seed, prime=prime)
        reports = [hecke_quadratic_check(p['m']),
                   hecke_image_check(p['m'], p['n'], p['mode'], p['seed'], p['prime'])]
        if p['m'] >= p['n']:
            reports.append(pairfree_compatibility_check(p['m'], p['n']))
        return self._announce(reports, verbose)

    def counts(
        self,
        n_max: int = 8,
        verbose: bool = False
    ):
        '''
        The rank identity sum_f |D_{nu_f}|^2 (n - 2f)! = (2n - 1)!!

        >>> verifier.counts(8)

        Parameters
        ----------
        n_max: int (default 8)
            Largest n checked
        verbose: bool (default False)
            Whether to print a summary line
        '''
        return self._announce([counts_report(n_max)], verbose)

    '''
    ###########################################################################
    ######################### Duality Operations ###############################
    ###########################################################################
    '''

    def duality(
        self,
        m: int = None,
        n: int = None,
        mode: str = None,
        seed: int = None,
        prime: int = None,
        threads: int = None,
        verbose: bool = False
    ):
        '''
        Double centralizer, faithfulness of the BMW action and commutation of the two actions.

        >>> verifier.duality(1, 2, mode='exact')

        Parameters
        ----------
        m, n: int or None (default None)
            Rank and degree. If not provided, will use verifier settings
        mode: str or None (default None)
            'exact', 'modp' or 'auto'
        seed: int or None (default None)
            Prime-field sampling seed
        prime: int or None (default None)
            Fixed prime
        threads: int or None (default None)
            Workers for closure rounds
        verbose: bool (default False)
            Whether to print a summary line per report
        '''
        p = self._resolve(m=m, n=n, mode=mode, seed=seed, prime=prime, threads=threads)
        m, n = p['m'], p['n']
        reports = [
            duality_report(m, n, p['mode'], p['seed'], p['prime'], p['threads']),
            faithfulness_check(m, n, p['mode'], p['seed'], p['prime']),
        ]
        if (2 * m) ** n <= 64:
            reports.append(bmw_commutation_check(m, n))
        return self._announce(reports, verbose)

    def bimodule(
        self,
        m: int = None,
        n: int = None,
        verbose: bool = False
    ):
        '''
        (2m)^n as the Weyl-dimension sum over the bimodule decomposition.

        >>> verifier.bimodule(3, 3)

        Parameters
        ----------
        m, n: int or None (default None)
            Rank and degree. If not provided, will use verifier settings
        verbose: bool (default False)
            Whether to print a summary line
        '''
        p = self._resolve(m=m, n=n)
        return self._announce([bimodule_dimension_check(p['m'], p['n'])], verbose)

    def oehms(
        self,
        m: int = None,
        n: int = None,
        mode: str = None,
        seed: int = None,
        prime: int = None,
        verbose: bool = False
    ):
        '''
        The bideterminant basis against the Schur algebra, with the FRT and d_q checks at
        degree two and, for small spaces, exact duality of the coordinate pairing.

        >>> verifier.oehms(1, 3)

        Parameters
        ----------
        m, n: int or None (default None)
            Rank and degree. If not provided, will use verifier settings
        mode: str or None (default None)
            'exact', 'modp' or 'auto'; 'auto' is exact here
        seed: int or None (default None)
            Prime-field sampling seed
        prime: int or None (default None)
            Fixed prime
        verbose: bool (default False)
            Whether to print a summary line per report
        '''
        p = self._resolve(m=m, n=n, seed=seed, prime=prime)
        mode = mode or ('exact' if self.mode == MODE_AUTO else self.mode)
        reports = [oehms_report(p['m'], p['n'], mode, p['seed'], p['prime'])]
        if (2 * p['m']) ** p['n'] <= AUTO_EXACT_DIM:
            reports.append(pairing_duality_check(p['m'], p['n']))
        return self._announce(reports, verbose)

    '''
    ###########################################################################
    ######################### Quantum Group Operations #########################
    ###########################################################################
    '''

    def projectors(
        self,
        m: int = None,
        n: int = None,
        verbose: bool = False
    ):
        '''
        Weight projectors realised inside the integral quantum group.

        >>> verifier.projectors(2, 2)

        Parameters
        ----------
        m, n: int or None (default None)
            Rank and degree. If not provided, will use verifier settings
        verbose: bool (default False)
            Whether to print a summary line
        '''
        p = self._resolve(m=m, n=n)
        return self._announce([projector_report(p['m'], p['n'])], verbose)

    def serre(
        self,
        m: int = None,
        n: int = None,
        verbose: bool = False
    ):
        '''
        The defining relations of the quantum group on V^{(x)n}.

        >>> verifier.serre(2, 2)

        Parameters
        ----------
        m, n: int or None (default None)
            Rank and degree. If not provided, will use verifier settings
        verbose: bool (default False)
            Whether to print a summary line
        '''
        p = self._resolve(m=m, n=n)
        return self._announce([serre_check(p['m'], p['n'])], verbose)

    def truncate(
        self,
        m: int = None,
        m0: int = None,
        n: int = None,
        mode: str = None,
        seed: int = None,
        prime: int = None,
        verbose: bool = False
    ):
        '''
        Compression from rank m0 to rank m against the Enyang basis, and on the quantum
        group commutant when the large space is small enough.

        >>> verifier.truncate(1, 2, 2)

        Parameters
        ----------
        m: int or None (default None)
            The small rank. If not provided, will use verifier settings
        m0: int
            The large rank, above m
        n: int or None (default None)
            Strands. If not provided, will use verifier settings
        mode: str or None (default None)
            'exact', 'modp' or 'auto'
        seed: int or None (default None)
            Prime-field sampling seed
        prime: int or None (default None)
            Fixed prime
        verbose: bool (default False)
            Whether to print a summary line per report
        '''
        p = self._resolve(m=m, n=n, mode=mode, seed=seed, prime=prime)
        if m0 is None:
            m0 = p['m'] + 1
        reports = [diagram_check(p['m'], m0, p['n'], p['mode'], p['seed'], p['prime'])]
        if (2 * m0) ** p['n'] <= AUTO_EXACT_DIM:
            reports.append(commutant_invariance_check(p['m'], m0, p['n']))
        return self._announce(reports, verbose)

    '''
    ###########################################################################
    ########################## Report Operations ###############################
    ###########################################################################
    '''

    def save_report(
        self,
        reports,
        suite: str,
        path: str = None,
        verbose: bool = False
    ):
        '''
        Write the JSON envelope of one suite run.

        >>> verifier.save_report(verifier.relations(1, 2), 'relations')

        Parameters
        ----------
        reports: VerificationReport or list of VerificationReport
            What to save
        suite: str
            The suite name, as used by the command line
        path: str or None (default None)
            Target file. If not provided, <report_dir>/<suite>-m<m>-n<n>.json
        verbose: bool (default False)
            Whether to print the path written
        '''
        if not isinstance(reports, (list, tuple)):
            reports = [reports]
        if path is None:
            params = reports[0].parameters if reports else {}
            suffix = ''.join(f'-{k}{v}' for k, v in params.items() if k in ('m', 'm0', 'n', 'n_max'))
            path = Path(self.report_dir) / f'{suite}{suffix}.json'
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dump_json(envelope(reports, suite, self.seed)) + '\n')
        logger.info('report written to %s', path)
        if verbose:
            print(f'Report saved to {path}')
        return path


SUITES = (SUITE_RELATIONS, SUITE_DUALITY, SUITE_COUNTS, SUITE_OEHMS, SUITE_PROJECTORS, SUITE_TRUNCATE,
          SUITE_BIMODULE, SUITE_HECKE, SUITE_SERRE)
