import { api, ApiError } from './api.js';
import { clear, el } from './dom.js';
import { pollJob } from './poll.js';
import { ATTRACTOR_CLASSES, FiltersJson, JobSnapshot, SearchConfigJson, SymmetryJson } from './types.js';

const RATIONAL = /^-?\d+(\/-?\d+)?$/;

export interface FieldErrors {
  [field: string]: string;
}

export interface FormValues {
  a: string;
  b: string;
  c: string;
  generators: string;
  mLo: string;
  mHi: string;
  box: string;
  wordLength: string;
  budget: string;
  seed: string;
  connected: '' | 'true' | 'false';
  attractorClass: string;
  minTypes: string;
  maxTypes: string;
  minFli: string;
  maxFli: string;
}

export const DEFAULT_FORM: FormValues = {
  a: '0',
  b: '-1',
  c: '2',
  generators: '',
  mLo: '2',
  mHi: '4',
  box: '2',
  wordLength: '1',
  budget: '500',
  seed: '0',
  connected: '',
  attractorClass: '',
  minTypes: '',
  maxTypes: '',
  minFli: '',
  maxFli: '',
};

function checkRational(value: string, field: string, errors: FieldErrors): string {
  const text = value.trim();
  if (!RATIONAL.test(text)) {
    errors[field] = 'expected an integer or p/q';
    return text;
  }
  const [, den] = text.split('/');
  if (den !== undefined && parseInt(den, 10) === 0) {
    errors[field] = 'zero denominator';
  }
  return text;
}

function checkInt(
  value: string,
  field: string,
  errors: FieldErrors,
  min: number
): number {
  const text = value.trim();
  if (!/^-?\d+$/.test(text)) {
    errors[field] = 'expected an integer';
    return NaN;
  }
  const parsed = parseInt(text, 10);
  if (parsed < min) {
    errors[field] = `must be at least ${min}`;
    return NaN;
  }
  return parsed;
}

/** One generator per line: "x, y" with an optional ", r" reflection flag. */
export function parseGenerators(text: string, errors: FieldErrors): SymmetryJson[] {
  const out: SymmetryJson[] = [];
  const lines = text.split('\n').map((l) => l.trim()).filter((l) => l.length > 0);
  lines.forEach((line, i) => {
    const parts = line.split(',').map((p) => p.trim());
    if (parts.length < 2 || parts.length > 3) {
      errors.generators = `line ${i + 1}: expected "x, y" or "x, y, r"`;
      return;
    }
    const local: FieldErrors = {};
    const x = checkRational(parts[0], 'x', local);
    const y = checkRational(parts[1], 'y', local);
    if (local.x || local.y) {
      errors.generators = `line ${i + 1}: ${local.x ?? local.y}`;
      return;
    }
    let reflected = false;
    if (parts.length === 3) {
      if (parts[2] !== 'r') {
        errors.generators = `line ${i + 1}: third item must be "r"`;
        return;
      }
      reflected = true;
    }
    out.push({ x, y, reflected });
  });
  return out;
}

/**
 * Syntactic validation mirroring the server's cheap checks; semantic
 * ones (det > 1, unit generators) stay on the server, whose messages
 * are mapped back onto fields by attributeViolation.
 */
export function buildConfig(
  values: FormValues
): { config: SearchConfigJson | null; errors: FieldErrors } {
  const errors: FieldErrors = {};
  const a = checkRational(values.a, 'a', errors);
  const b = checkRational(values.b, 'b', errors);
  const c = checkRational(values.c, 'c', errors);
  const generators = parseGenerators(values.generators, errors);
  const mLo = checkInt(values.mLo, 'mLo', errors, 2);
  const mHi = checkInt(values.mHi, 'mHi', errors, 2);
  if (!errors.mLo && !errors.mHi && mHi < mLo) {
    errors.mHi = 'upper bound below lower bound';
  }
  const box = checkInt(values.box, 'box', errors, 1);
  const wordLength = checkInt(values.wordLength, 'wordLength', errors, 0);
  const budget = checkInt(values.budget, 'budget', errors, 0);
  const seed = checkInt(values.seed, 'seed', errors, 0);

  const filters: FiltersJson = {};
  if (values.connected) filters.connected = values.connected === 'true';
  if (values.attractorClass) filters.attractor_class = values.attractorClass;
  const bound = (raw: string, field: string, key: keyof FiltersJson) => {
    if (raw.trim() === '') return;
    const parsed = checkInt(raw, field, errors, 0);
    if (!Number.isNaN(parsed)) (filters[key] as number) = parsed;
  };
  bound(values.minTypes, 'minTypes', 'min_types');
  bound(values.maxTypes, 'maxTypes', 'max_types');
  bound(values.minFli, 'minFli', 'min_fli');
  bound(values.maxFli, 'maxFli', 'max_fli');

  if (Object.keys(errors).length > 0) return { config: null, errors };

  const config: SearchConfigJson = {
    field: { a },
    expansion: { b, c },
    generators,
    m_range: [mLo, mHi],
    translation_box: box,
    symmetry_word_length: wordLength,
    budget,
    seed,
  };
  if (Object.keys(filters).length > 0) config.filters = filters;
  return { config, errors };
}

/** Route a server-side violation message to the field it talks about. */
export function attributeViolation(message: string): string {
  const rules: [RegExp, string][] = [
    [/generator/i, 'generators'],
    [/expansion|det/i, 'c'],
    [/map count/i, 'mHi'],
    [/translation box/i, 'box'],
    [/word length/i, 'wordLength'],
    [/budget/i, 'budget'],
    [/seed/i, 'seed'],
    [/class/i, 'attractorClass'],
    [/field|rational/i, 'a'],
  ];
  for (const [pattern, field] of rules) {
    if (pattern.test(message)) return field;
  }
  return 'form';
}

// --- view -----------------------------------------------------------

export function mountSearch(container: HTMLElement): void {
  const values: FormValues = { ...DEFAULT_FORM };
  const jobsHolder = el('div', { class: 'jobs' });

  clear(container);
  container.append(el('h2', {}, 'Search console'), buildForm(), jobsHolder);

  function buildForm(): HTMLElement {
    const errorSlots = new Map<string, HTMLElement>();
    const inputs = new Map<string, HTMLInputElement | HTMLSelectElement | HTMLTextAreaElement>();

    function labelled(
      field: string,
      text: string,
      input: HTMLInputElement | HTMLSelectElement | HTMLTextAreaElement
    ): HTMLElement {
      const slot = el('span', { class: 'field-error', 'data-field': field });
      errorSlots.set(field, slot);
      inputs.set(field, input);
      input.setAttribute('name', field);
      return el('label', { class: 'form-field' }, text, input, slot);
    }

    const textInput = (field: keyof FormValues, size = 8) =>
      el('input', { type: 'text', value: values[field], size: String(size) });

    const form = el('form', { class: 'search-form' });
    const aInput = textInput('a');
    const bInput = textInput('b');
    const cInput = textInput('c');
    const genInput = el('textarea', {
      rows: '3',
      placeholder: '3/5, 4/5\n1, 0, r',
    }) as HTMLTextAreaElement;
    genInput.value = values.generators;
    const mLoInput = textInput('mLo', 4);
    const mHiInput = textInput('mHi', 4);
    const boxInput = textInput('box', 4);
    const wordInput = textInput('wordLength', 4);
    const budgetInput = textInput('budget', 8);
    const seedInput = textInput('seed', 8);

    const connectedSelect = el(
      'select',
      {},
      el('option', { value: '' }, 'any connectivity'),
      el('option', { value: 'true' }, 'connected only'),
      el('option', { value: 'false' }, 'disconnected only')
    );
    const classSelect = el(
      'select',
      {},
      el('option', { value: '' }, 'any class'),
      ...ATTRACTOR_CLASSES.map((c) => el('option', { value: c }, c))
    );
    const minTypesInput = textInput('minTypes', 4);
    const maxTypesInput = textInput('maxTypes', 4);
    const minFliInput = textInput('minFli', 4);
    const maxFliInput = textInput('maxFli', 4);

    const formError = el('p', { class: 'field-error form-level' });

    form.append(
      el(
        'fieldset',
        {},
        el('legend', {}, 'Family'),
        labelled('a', 'field a', aInput),
        labelled('b', 'expansion b', bInput),
        labelled('c', 'expansion c', cInput),
        labelled('generators', 'generators', genInput),
        labelled('mLo', 'maps from', mLoInput),
        labelled('mHi', 'to', mHiInput),
        labelled('box', 'translation box', boxInput),
        labelled('wordLength', 'symmetry word length', wordInput)
      ),
      el(
        'fieldset',
        {},
        el('legend', {}, 'Run'),
        labelled('budget', 'budget', budgetInput),
        labelled('seed', 'seed', seedInput)
      ),
      el(
        'fieldset',
        {},
        el('legend', {}, 'Keep only'),
        labelled('connected', 'connectivity', connectedSelect),
        labelled('attractorClass', 'class', classSelect),
        labelled('minTypes', 'min types', minTypesInput),
        labelled('maxTypes', 'max types', maxTypesInput),
        labelled('minFli', 'min fli', minFliInput),
        labelled('maxFli', 'max fli', maxFliInput)
      ),
      el('button', { type: 'submit', class: 'start-button' }, 'Start search'),
      formError
    );

    form.addEventListener('submit', (event) => {
      event.preventDefault();
      values.a = aInput.value;
      values.b = bInput.value;
      values.c = cInput.value;
      values.generators = genInput.value;
      values.mLo = mLoInput.value;
      values.mHi = mHiInput.value;
      values.box = boxInput.value;
      values.wordLength = wordInput.value;
      values.budget = budgetInput.value;
      values.seed = seedInput.value;
      values.connected = connectedSelect.value as FormValues['connected'];
      values.attractorClass = classSelect.value;
      values.minTypes = minTypesInput.value;
      values.maxTypes = maxTypesInput.value;
      values.minFli = minFliInput.value;
      values.maxFli = maxFliInput.value;

      for (const slot of errorSlots.values()) slot.textContent = '';
      formError.textContent = '';

      const { config, errors } = buildConfig(values);
      if (!config) {
        for (const [field, message] of Object.entries(errors)) {
          const slot = errorSlots.get(field);
          if (slot) slot.textContent = message;
          else formError.textContent = message;
        }
        return;
      }
      void start(config);
    });

    async function start(config: SearchConfigJson): Promise<void> {
      try {
        const started = await api.startSearch(config);
        jobsHolder.prepend(jobCard(started.job_id));
      } catch (err) {
        if (err instanceof ApiError && err.status === 400) {
          for (const violation of err.violations()) {
            const field = attributeViolation(violation);
            const slot = errorSlots.get(field);
            if (slot) slot.textContent = violation;
            else formError.textContent = violation;
          }
          if (err.violations().length === 0) formError.textContent = err.message;
        } else {
          formError.textContent = err instanceof ApiError ? err.message : String(err);
        }
      }
    }

    return form;
  }
}

function jobCard(jobId: string): HTMLElement {
  const stateLine = el('span', { class: 'job-state' }, 'Pending');
  const progressLine = el('span', { class: 'job-progress' }, 'tried 0, found 0');
  const results = el('ul', { class: 'job-results' });
  const note = el('p', { class: 'muted' });

  const cancelButton = el(
    'button',
    {
      onclick: () => {
        void api.cancelJob(jobId).catch((err) => {
          note.textContent = err instanceof ApiError ? err.message : String(err);
        });
      },
    },
    'Cancel'
  ) as HTMLButtonElement;

  const card = el(
    'div',
    { class: 'job-card', 'data-job': jobId },
    el('h4', {}, `job ${jobId}`),
    stateLine,
    ' ',
    progressLine,
    cancelButton,
    results,
    note
  );

  void pollJob(jobId, (snap) => update(snap))
    .then((snap) => finish(snap))
    .catch((err) => {
      note.textContent = err instanceof ApiError ? err.message : String(err);
    });

  function update(snap: JobSnapshot): void {
    stateLine.textContent = snap.state;
    progressLine.textContent = `tried ${snap.progress.tried}, found ${snap.progress.found}`;
  }

  function finish(snap: JobSnapshot): void {
    cancelButton.disabled = true;
    if (snap.result_ids.length === 0) {
      note.textContent =
        snap.state === 'Cancelled' ? 'cancelled, nothing stored' : 'finished, nothing found';
      return;
    }
    for (const id of snap.result_ids) {
      results.append(
        el('li', {}, el('a', { href: `#/example/${id}` }, id.slice(0, 12)))
      );
    }
    note.append(
      `${snap.result_ids.length} stored, `,
      el('a', { href: '#/' }, 'open the gallery')
    );
  }

  return card;
}
